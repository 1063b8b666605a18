#pragma once

// Catalan series behind the expectation results, and exhaustive sweeps over
// the ordinate grid j / (3 * 4^n), 0 <= j <= 2 * 4^n.

#include "levelsets.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <vector>

namespace takagi {

inline Integer binom_central(unsigned long m)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), 2 * m, m);
    return out;
}

inline Integer catalan(unsigned long n) { return binom_central(n) / (n + 1); }

inline constexpr std::size_t exact_series_limit = 64;

// sum_{n<=M} C_n 4^-n, exactly.
inline Rational catalan_series_exact(std::size_t terms)
{
    if (terms > exact_series_limit) {
        throw budget_exceeded("exact series limited to " + std::to_string(exact_series_limit) + " terms");
    }
    Rational s = 0;
    for (std::size_t n = 0; n <= terms; ++n) {
        s += Rational(catalan(n)) * detail::pow2(-2 * static_cast<long>(n));
    }
    return s;
}

// sum_{m<=M} binom(2m,m) 4^-m, exactly.
inline Rational central_series_exact(std::size_t terms)
{
    if (terms > exact_series_limit) {
        throw budget_exceeded("exact series limited to " + std::to_string(exact_series_limit) + " terms");
    }
    Rational s = 0;
    for (std::size_t m = 0; m <= terms; ++m) {
        s += Rational(binom_central(m)) * detail::pow2(-2 * static_cast<long>(m));
    }
    return s;
}

// Floating-point partial sums use the term ratios
//   C_{n+1}/C_n 4^-1 = (2n+1)/(2n+4),   binom(2m+2,m+1)/binom(2m,m) 4^-1 = (2m+1)/(2m+2),
// so every term is a product of numbers in (0,1) and no overflow occurs;
// relative rounding error grows at most linearly in M.
inline double catalan_series_partial(std::size_t terms)
{
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t n = 0; n < terms; ++n) {
        term *= (2.0 * n + 1.0) / (2.0 * n + 4.0);
        sum += term;
    }
    return sum;
}

// 2 * sum_{m<=M} (3/4) binom(2m,m) 4^-m; grows like sqrt(M).
inline double expected_cardinality_series_partial(std::size_t terms)
{
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t m = 0; m < terms; ++m) {
        term *= (2.0 * m + 1.0) / (2.0 * m + 2.0);
        sum += term;
    }
    return 1.5 * sum;
}

// (3/4) sum_{m<=M} C_m 4^-m, converging to 3/2.
inline double expected_local_series_partial(std::size_t terms) { return 0.75 * catalan_series_partial(terms); }

inline Rational expected_local_series_exact(std::size_t terms) { return Rational(3, 4) * catalan_series_exact(terms); }

struct GridRow {
    std::size_t j = 0;
    ExactRational y;
    Verdict verdict = Verdict::indeterminate;
    std::size_t cardinality = 0;
    std::size_t n_local = 0;
    std::size_t states = 0;
};

struct VerdictCounts {
    std::size_t finite = 0;
    std::size_t countable = 0;
    std::size_t uncountable = 0;
    std::size_t indeterminate = 0;

    std::size_t total() const { return finite + countable + uncountable + indeterminate; }
};

struct GridReport {
    std::size_t depth = 0;
    std::size_t ordinates = 0;
    std::map<std::size_t, std::size_t> histogram; // cardinality -> count, finite verdicts only
    VerdictCounts verdicts;
    double mean_n_local = 0.0;
    double fraction_cardinality_two = 0.0;
    std::vector<GridRow> rows;
};

inline constexpr std::size_t default_max_grid_depth = 6;

inline ExactRational grid_ordinate(std::size_t j, std::size_t depth)
{
    Integer den = 3;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * depth);
    return make_rational(Integer(static_cast<unsigned long>(j)), den);
}

inline GridReport grid_experiment(std::size_t depth, const Budget& budget = {},
                                  std::size_t max_depth = default_max_grid_depth, unsigned workers = 0)
{
    if (depth > max_depth) {
        throw budget_exceeded("grid depth " + std::to_string(depth) + " exceeds the configured maximum "
                              + std::to_string(max_depth));
    }
    const std::size_t count = 2 * (std::size_t{1} << (2 * depth)) + 1;
    GridReport rep;
    rep.depth = depth;
    rep.ordinates = count;
    rep.rows.resize(count);

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j = next++; j < count; j = next++) {
            GridRow& row = rep.rows[j];
            row.j = j;
            row.y = grid_ordinate(j, depth);
            const LevelSetReport r = classify(row.y, budget);
            row.verdict = r.verdict;
            row.cardinality = r.cardinality;
            row.n_local = r.n_local;
            row.states = r.states_explored;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }

    std::size_t local_sum = 0;
    std::size_t two = 0;
    for (const auto& row : rep.rows) {
        switch (row.verdict) {
        case Verdict::finite:
            ++rep.verdicts.finite;
            ++rep.histogram[row.cardinality];
            local_sum += row.n_local;
            two += row.cardinality == 2;
            break;
        case Verdict::countably_infinite:
            ++rep.verdicts.countable;
            break;
        case Verdict::uncountable:
            ++rep.verdicts.uncountable;
            break;
        case Verdict::indeterminate:
            ++rep.verdicts.indeterminate;
            break;
        }
    }
    if (rep.verdicts.finite > 0) {
        rep.mean_n_local = static_cast<double>(local_sum) / static_cast<double>(rep.verdicts.finite);
    }
    rep.fraction_cardinality_two = static_cast<double>(two) / static_cast<double>(count);
    return rep;
}

} // namespace takagi
