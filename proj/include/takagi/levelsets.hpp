#pragma once

// Level sets L(y) = {x in [0,1] : T(x) = y} for supported rational y, and
// their decomposition into local level sets (classes of x ~ x' iff
// |D_j(x)| = |D_j(x')| for all j).

#include "statemachine.hpp"

#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace takagi {

struct LevelSetReport {
    ExactRational ordinate;
    Verdict verdict = Verdict::indeterminate;
    std::size_t cardinality = 0;
    std::vector<Rational> preimages;
    std::vector<Lasso> lassos;
    std::size_t n_local = 0;
    std::string witness;
    std::size_t states_explored = 0;
    long max_abs_slope = 0;
};

namespace detail {

inline std::vector<long> abs_walk(const BinaryExpansion& x, std::size_t n)
{
    std::vector<long> out;
    out.reserve(n);
    long d = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        d += x.digit(i) ? -1 : 1;
        out.push_back(std::labs(d));
    }
    return out;
}

} // namespace detail

// Number of local level sets among eventually periodic points. Profiles are
// compared over the longest preperiod plus two common periods; past that
// window each walk repeats with a fixed drift.
inline std::size_t count_local_classes(const std::vector<Lasso>& points)
{
    std::size_t pre = 0;
    std::size_t period = 1;
    for (const auto& p : points) {
        pre = std::max(pre, p.digits.preperiod.size());
        period = std::lcm(period, std::max<std::size_t>(1, p.digits.period.size()));
    }
    std::set<std::vector<long>> profiles;
    for (const auto& p : points) {
        profiles.insert(detail::abs_walk(p.digits, pre + 2 * period));
    }
    return profiles.size();
}

inline LevelSetReport classify(const ExactRational& y, const Budget& budget = {})
{
    LevelSetReport r;
    r.ordinate = y;
    const StateGraph g = close_graph(y, budget);
    r.states_explored = g.states_explored();
    r.max_abs_slope = g.max_abs_slope();
    if (!g.closed()) {
        r.verdict = Verdict::indeterminate;
        r.witness = "budget exhausted after " + std::to_string(g.states_explored()) + " states, max |D| "
                    + std::to_string(g.max_abs_slope());
        return r;
    }
    const GraphAnalysis a = analyze(g);
    r.verdict = a.verdict;
    r.witness = a.witness;
    if (a.verdict == Verdict::finite) {
        r.lassos = reconstruct_lassos(g);
        for (const auto& l : r.lassos) {
            r.preimages.push_back(l.value());
        }
        r.cardinality = r.preimages.size();
        r.n_local = count_local_classes(r.lassos);
    }
    return r;
}

inline std::size_t local_level_set_count(const LevelSetReport& report)
{
    if (report.verdict != Verdict::finite) {
        throw not_finite("local level sets are only counted for finite level sets");
    }
    return count_local_classes(report.lassos);
}

// All words of the same length with the same |D| profile: one sign choice per
// excursion of the walk away from 0.
inline std::vector<DigitWord> local_partners(const DigitWord& prefix)
{
    const auto& digits = prefix.digits();
    const auto& walk = prefix.walk();
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t start = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] == 0) {
            blocks.emplace_back(start, i + 1);
            start = i + 1;
        }
    }
    if (start < walk.size()) {
        blocks.emplace_back(start, walk.size());
    }
    std::vector<DigitWord> out;
    const std::size_t combos = std::size_t{1} << blocks.size();
    out.reserve(combos);
    for (std::size_t mask = 0; mask < combos; ++mask) {
        Bits w = digits;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (mask >> b & 1) {
                for (std::size_t i = blocks[b].first; i < blocks[b].second; ++i) {
                    w[i] ^= 1;
                }
            }
        }
        out.push_back(DigitWord::from_bits(w));
    }
    std::sort(out.begin(), out.end(), [](const DigitWord& a, const DigitWord& b) { return a.digits() < b.digits(); });
    return out;
}

} // namespace takagi
