// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written with different algorithms than
// the production code (pairwise scans instead of hash grouping, full
// subset enumeration, bisection instead of closed forms).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "gct/rst.hpp"

namespace oracle {

inline bool rows_equal_on(const gct::DecisionTable& t, std::size_t i, std::size_t j,
                          const gct::AttrSet& attrs) {
    for (std::size_t a : attrs) {
        if (t.conditions[i][a] != t.conditions[j][a]) return false;
    }
    return true;
}

inline std::vector<std::vector<std::size_t>> blocks(const gct::DecisionTable& t,
                                                    const gct::AttrSet& attrs) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(t.n_objects(), false);
    for (std::size_t i = 0; i < t.n_objects(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> block;
        for (std::size_t j = i; j < t.n_objects(); ++j) {
            if (!seen[j] && rows_equal_on(t, i, j, attrs)) {
                block.push_back(j);
                seen[j] = true;
            }
        }
        out.push_back(std::move(block));
    }
    return out;
}

inline std::vector<std::size_t> lower(const gct::DecisionTable& t, const gct::AttrSet& attrs,
                                      int dclass) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.n_objects(); ++i) {
        if (t.decisions[i] != dclass) continue;
        bool inside = true;
        for (std::size_t j = 0; j < t.n_objects(); ++j) {
            if (rows_equal_on(t, i, j, attrs) && t.decisions[j] != dclass) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(i);
    }
    return out;
}

inline std::vector<std::size_t> upper(const gct::DecisionTable& t, const gct::AttrSet& attrs,
                                      int dclass) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.n_objects(); ++i) {
        bool touches = false;
        for (std::size_t j = 0; j < t.n_objects(); ++j) {
            if (rows_equal_on(t, i, j, attrs) && t.decisions[j] == dclass) {
                touches = true;
                break;
            }
        }
        if (touches) out.push_back(i);
    }
    return out;
}

inline std::vector<std::size_t> positive_region(const gct::DecisionTable& t,
                                                const gct::AttrSet& attrs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.n_objects(); ++i) {
        bool pure = true;
        for (std::size_t j = 0; j < t.n_objects(); ++j) {
            if (rows_equal_on(t, i, j, attrs) && t.decisions[j] != t.decisions[i]) {
                pure = false;
                break;
            }
        }
        if (pure) out.push_back(i);
    }
    return out;
}

inline std::size_t pure_block_count(const gct::DecisionTable& t, const gct::AttrSet& attrs) {
    std::size_t count = 0;
    for (const auto& block : blocks(t, attrs)) {
        const int first = t.decisions[block.front()];
        if (std::all_of(block.begin(), block.end(),
                        [&](std::size_t o) { return t.decisions[o] == first; })) {
            ++count;
        }
    }
    return count;
}

// Exact rules by direct scan over pure blocks.
struct Rule {
    std::vector<std::pair<std::size_t, int>> conditions;
    int decision;
    std::size_t support;
};

inline std::vector<Rule> exact_rules(const gct::DecisionTable& t, const gct::AttrSet& attrs) {
    std::vector<Rule> out;
    for (const auto& block : blocks(t, attrs)) {
        const int first = t.decisions[block.front()];
        const bool pure = std::all_of(block.begin(), block.end(),
                                      [&](std::size_t o) { return t.decisions[o] == first; });
        if (!pure) continue;
        Rule r;
        for (std::size_t a : attrs) r.conditions.emplace_back(a, t.conditions[block.front()][a]);
        r.decision = first;
        r.support = block.size();
        out.push_back(std::move(r));
    }
    return out;
}

// Every minimal subset preserving the full positive region, by checking
// each candidate against all of its proper subsets directly.
inline std::vector<gct::AttrSet> reducts(const gct::DecisionTable& t) {
    const std::size_t n = t.n_attrs();
    gct::AttrSet all(n);
    for (std::size_t a = 0; a < n; ++a) all[a] = a;
    const auto target = oracle::positive_region(t, all);

    auto subset_attrs = [&](std::uint32_t mask) {
        gct::AttrSet s;
        for (std::size_t a = 0; a < n; ++a) {
            if (mask & (1u << a)) s.push_back(a);
        }
        return s;
    };
    std::vector<bool> qualifies(1u << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        qualifies[mask] = oracle::positive_region(t, subset_attrs(mask)) == target;
    }
    std::vector<gct::AttrSet> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!qualifies[mask]) continue;
        bool minimal = true;
        for (std::uint32_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
            if (sub != mask && qualifies[sub]) {
                minimal = false;
                break;
            }
        }
        if (mask != 0 && qualifies[0]) minimal = false;
        if (minimal) out.push_back(subset_attrs(mask));
    }
    std::sort(out.begin(), out.end(), [](const gct::AttrSet& a, const gct::AttrSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

inline double em(const std::vector<int>& actual, const std::vector<std::optional<int>>& predicted) {
    double total = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        total += predicted[i] ? static_cast<double>((actual[i] - *predicted[i]) *
                                                    (actual[i] - *predicted[i]))
                              : 1.0;
    }
    return total / static_cast<double>(actual.size());
}

inline gct::DecisionTable random_table(std::mt19937_64& rng, std::size_t max_objects = 8,
                                       std::size_t n_attrs = 4, int max_values = 3,
                                       int decision_values = 3) {
    std::uniform_int_distribution<std::size_t> n_obj(1, max_objects);
    std::uniform_int_distribution<int> value(0, max_values - 1);
    std::uniform_int_distribution<int> decision(0, decision_values - 1);
    gct::DecisionTable t;
    const std::size_t objects = n_obj(rng);
    for (std::size_t i = 0; i < objects; ++i) {
        std::vector<int> row(n_attrs);
        for (auto& v : row) v = value(rng);
        t.conditions.push_back(std::move(row));
        t.decisions.push_back(decision(rng));
    }
    return t;
}

/// Bisection root finding for monotone increasing f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                     double tol = 1e-12) {
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
