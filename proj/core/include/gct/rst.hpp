#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gct {

/// Symbolic information table: integer category codes per condition
/// attribute plus one decision code per object.
struct DecisionTable {
    std::vector<std::vector<int>> conditions;  // one row per object
    std::vector<int> decisions;

    std::size_t n_objects() const { return conditions.size(); }
    std::size_t n_attrs() const { return conditions.empty() ? 0 : conditions.front().size(); }
};

/// Exact if-then rule read off a pure indiscernibility block.
struct RoughRule {
    std::vector<std::pair<std::size_t, int>> conditions;  // (attribute index, code)
    int decision = 0;
    std::size_t support = 0;
    double strength = 0.0;  // support / |objects|
};

/// Global strength-threshold state for the adaptive classification loop.
struct StrengthState {
    double s = 0.1;
    std::vector<std::pair<double, double>> history;  // (s after update, EM)
    bool converged = false;
};

using AttrSet = std::vector<std::size_t>;  // ascending, unique

/// Decision code ascribed to objects no rule recognizes.
inline constexpr int kUnrecognizedSentinel = 4;

/// Step threshold below which the adaptation loop counts as converged.
inline constexpr double kStrengthConvergenceTol = 1e-3;

/// Equivalence classes of the indiscernibility relation on attrs; blocks
/// are ordered by their lowest object index. Empty attrs yields the
/// single universe block.
std::vector<std::vector<std::size_t>> indiscernibility_classes(const DecisionTable& t,
                                                               const AttrSet& attrs);

/// Objects whose block lies entirely inside the decision class.
std::vector<std::size_t> lower_approx(const DecisionTable& t, const AttrSet& attrs, int dclass);

/// Objects whose block intersects the decision class.
std::vector<std::size_t> upper_approx(const DecisionTable& t, const AttrSet& attrs, int dclass);

/// Union of lower approximations over all decision classes.
std::vector<std::size_t> positive_region(const DecisionTable& t, const AttrSet& attrs);

/// Entry (i,j): condition attributes on which objects i and j differ,
/// recorded only when their decisions differ. Symmetric, empty diagonal.
std::vector<std::vector<AttrSet>> discernibility_matrix(const DecisionTable& t);

/// All minimal attribute subsets (searched up to max_attrs members) that
/// preserve the positive region of the full attribute set. Exhaustive;
/// tables over 20 attributes are rejected.
std::vector<AttrSet> find_reducts(const DecisionTable& t, std::size_t max_attrs);

/// One rule per pure block of the indiscernibility partition on attrs.
std::vector<RoughRule> extract_exact_rules(const DecisionTable& t, const AttrSet& attrs);

/// Highest-strength matching rule at or above the threshold (ties: more
/// conditions, then lower rule index); nullopt when nothing matches.
std::optional<int> classify(const std::vector<RoughRule>& rules, double threshold,
                            const std::vector<int>& x);

/// Squared-difference error over recognized objects; an unrecognized
/// object contributes exactly 1.
double em(const std::vector<int>& actual, const std::vector<std::optional<int>>& predicted);

/// Linear negative-feedback update s' = clamp(s - gain*(em - target), 0, 1).
StrengthState adapt_strength(StrengthState state, double em_value, double gain, double target);

/// `IF a0=v AND a2=w THEN d=k  [support=n, strength=0.xxxx]`, one per line.
std::string dump_rules(const std::vector<RoughRule>& rules);

}  // namespace gct
