#include "gct/rst.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

#include "gct/errors.hpp"
#include "gct/textio.hpp"

namespace gct {

namespace {

constexpr std::size_t kReductAttrBound = 20;

void check_table(const DecisionTable& t) {
    if (t.n_objects() == 0) throw SizeError("decision table has no objects");
    if (t.decisions.size() != t.n_objects())
        throw SizeError("decision table: decision count does not match object count");
    const std::size_t width = t.n_attrs();
    for (const auto& row : t.conditions) {
        if (row.size() != width) throw SizeError("decision table: ragged condition rows");
    }
}

void check_attrs(const DecisionTable& t, const AttrSet& attrs) {
    for (std::size_t a : attrs) {
        if (a >= t.n_attrs())
            throw IndexError("attribute index " + std::to_string(a) + " out of range (table has " +
                             std::to_string(t.n_attrs()) + " attributes)");
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> indiscernibility_classes(const DecisionTable& t,
                                                               const AttrSet& attrs) {
    check_table(t);
    check_attrs(t, attrs);
    std::vector<std::vector<std::size_t>> blocks;
    std::map<std::vector<int>, std::size_t> block_of;
    for (std::size_t obj = 0; obj < t.n_objects(); ++obj) {
        std::vector<int> key;
        key.reserve(attrs.size());
        for (std::size_t a : attrs) key.push_back(t.conditions[obj][a]);
        auto [it, inserted] = block_of.try_emplace(std::move(key), blocks.size());
        if (inserted) blocks.emplace_back();
        blocks[it->second].push_back(obj);
    }
    return blocks;  // first-seen order == ordered by lowest object index
}

std::vector<std::size_t> lower_approx(const DecisionTable& t, const AttrSet& attrs, int dclass) {
    std::vector<std::size_t> out;
    for (const auto& block : indiscernibility_classes(t, attrs)) {
        const bool pure = std::all_of(block.begin(), block.end(),
                                      [&](std::size_t o) { return t.decisions[o] == dclass; });
        if (pure) out.insert(out.end(), block.begin(), block.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> upper_approx(const DecisionTable& t, const AttrSet& attrs, int dclass) {
    std::vector<std::size_t> out;
    for (const auto& block : indiscernibility_classes(t, attrs)) {
        const bool touches = std::any_of(block.begin(), block.end(),
                                         [&](std::size_t o) { return t.decisions[o] == dclass; });
        if (touches) out.insert(out.end(), block.begin(), block.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> positive_region(const DecisionTable& t, const AttrSet& attrs) {
    std::vector<std::size_t> out;
    for (const auto& block : indiscernibility_classes(t, attrs)) {
        const int first = t.decisions[block.front()];
        const bool pure = std::all_of(block.begin(), block.end(),
                                      [&](std::size_t o) { return t.decisions[o] == first; });
        if (pure) out.insert(out.end(), block.begin(), block.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<AttrSet>> discernibility_matrix(const DecisionTable& t) {
    check_table(t);
    if (t.n_objects() < 2) throw SizeError("discernibility_matrix: need at least two objects");
    const std::size_t n = t.n_objects();
    std::vector<std::vector<AttrSet>> m(n, std::vector<AttrSet>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (t.decisions[i] == t.decisions[j]) continue;
            AttrSet diff;
            for (std::size_t a = 0; a < t.n_attrs(); ++a) {
                if (t.conditions[i][a] != t.conditions[j][a]) diff.push_back(a);
            }
            m[i][j] = diff;
            m[j][i] = std::move(diff);
        }
    }
    return m;
}

std::vector<AttrSet> find_reducts(const DecisionTable& t, std::size_t max_attrs) {
    check_table(t);
    const std::size_t n_attrs = t.n_attrs();
    if (n_attrs > kReductAttrBound)
        throw CapacityError("find_reducts: " + std::to_string(n_attrs) +
                            " attributes exceed the exhaustive-search bound of " +
                            std::to_string(kReductAttrBound));

    AttrSet all(n_attrs);
    for (std::size_t a = 0; a < n_attrs; ++a) all[a] = a;
    const auto target = positive_region(t, all);

    std::vector<AttrSet> reducts;
    auto has_known_subset = [&](std::uint32_t mask) {
        for (const auto& r : reducts) {
            std::uint32_t rm = 0;
            for (std::size_t a : r) rm |= 1u << a;
            if ((rm & mask) == rm) return true;
        }
        return false;
    };

    const std::size_t size_cap = std::min(max_attrs, n_attrs);
    for (std::size_t size = 0; size <= size_cap; ++size) {
        for (std::uint32_t mask = 0; mask < (1u << n_attrs); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
            if (has_known_subset(mask)) continue;  // a smaller reduct already covers it
            AttrSet subset;
            for (std::size_t a = 0; a < n_attrs; ++a) {
                if (mask & (1u << a)) subset.push_back(a);
            }
            if (positive_region(t, subset) == target) reducts.push_back(std::move(subset));
        }
    }
    return reducts;
}

std::vector<RoughRule> extract_exact_rules(const DecisionTable& t, const AttrSet& attrs) {
    check_table(t);
    check_attrs(t, attrs);
    if (attrs.empty()) throw SizeError("extract_exact_rules: attribute set must be non-empty");
    std::vector<RoughRule> rules;
    for (const auto& block : indiscernibility_classes(t, attrs)) {
        const int decision = t.decisions[block.front()];
        const bool pure = std::all_of(block.begin(), block.end(),
                                      [&](std::size_t o) { return t.decisions[o] == decision; });
        if (!pure) continue;  // boundary blocks yield no exact rule
        RoughRule rule;
        for (std::size_t a : attrs) rule.conditions.emplace_back(a, t.conditions[block.front()][a]);
        rule.decision = decision;
        rule.support = block.size();
        rule.strength = static_cast<double>(block.size()) / static_cast<double>(t.n_objects());
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::optional<int> classify(const std::vector<RoughRule>& rules, double threshold,
                            const std::vector<int>& x) {
    const RoughRule* best = nullptr;
    for (const auto& rule : rules) {
        if (rule.strength < threshold) continue;
        bool matches = true;
        for (const auto& [attr, code] : rule.conditions) {
            if (attr >= x.size())
                throw IndexError("classify: rule attribute " + std::to_string(attr) +
                                 " out of range for object width " + std::to_string(x.size()));
            if (x[attr] != code) {
                matches = false;
                break;
            }
        }
        if (!matches) continue;
        if (best == nullptr || rule.strength > best->strength ||
            (rule.strength == best->strength && rule.conditions.size() > best->conditions.size())) {
            best = &rule;
        }
    }
    if (best == nullptr) return std::nullopt;
    return best->decision;
}

double em(const std::vector<int>& actual, const std::vector<std::optional<int>>& predicted) {
    if (actual.empty() || actual.size() != predicted.size())
        throw SizeError("em: need matching non-empty vectors");
    double total = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (predicted[i].has_value()) {
            const double d = actual[i] - *predicted[i];
            total += d * d;
        } else {
            total += 1.0;  // unrecognized objects contribute exactly 1
        }
    }
    return total / static_cast<double>(actual.size());
}

StrengthState adapt_strength(StrengthState state, double em_value, double gain, double target) {
    if (!std::isfinite(em_value)) throw NumericError("adapt_strength: EM is not finite");
    if (!(gain > 0.0)) throw ValidationError("adapt_strength: gain must be > 0");
    const double next = std::clamp(state.s - gain * (em_value - target), 0.0, 1.0);
    state.converged = std::abs(next - state.s) <= kStrengthConvergenceTol;
    state.s = next;
    state.history.emplace_back(next, em_value);
    return state;
}

std::string dump_rules(const std::vector<RoughRule>& rules) {
    std::ostringstream out;
    for (const auto& rule : rules) {
        out << "IF ";
        for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
            if (i > 0) out << " AND ";
            out << 'a' << rule.conditions[i].first << '=' << rule.conditions[i].second;
        }
        out << " THEN d=" << rule.decision << "  [support=" << rule.support
            << ", strength=" << fixed(rule.strength, 4) << "]\n";
    }
    return out.str();
}

}  // namespace gct
