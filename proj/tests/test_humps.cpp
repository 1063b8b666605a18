#include "oracles.hpp"

#include "takagi/humps.hpp"
#include "takagi/stats.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace takagi;

TEST(Humps, Census)
{
    for (std::size_t m = 1; m <= 7; ++m) {
        EXPECT_EQ(Integer(static_cast<unsigned long>(enumerate_balanced(m).size())), binom_central(m)) << m;
        EXPECT_EQ(Integer(static_cast<unsigned long>(enumerate_balanced(m, HumpFilter::leading_only()).size())),
                  catalan(m))
            << m;
        EXPECT_EQ(Integer(static_cast<unsigned long>(enumerate_balanced(m, HumpFilter::of_generation(1)).size())),
                  2 * catalan(m - 1))
            << m;
    }
    EXPECT_THROW(enumerate_balanced(13), budget_exceeded);
    EXPECT_THROW(enumerate_balanced(0), error);
}

TEST(Humps, LexicographicOrder)
{
    const auto humps = enumerate_balanced(3);
    for (std::size_t i = 1; i < humps.size(); ++i) {
        EXPECT_LT(humps[i - 1].word.digits(), humps[i].word.digits());
        EXPECT_LT(humps[i - 1].x0(), humps[i].x0());
    }
    EXPECT_EQ(word_string(humps.front().word.digits()), "000111");
    EXPECT_EQ(word_string(humps.back().word.digits()), "111000");
}

TEST(Humps, Goldens)
{
    const Hump a = hump_at(Rational(1, 4));
    EXPECT_EQ(a.interval_x, (Interval{Rational(1, 4), Rational(1, 2)}));
    EXPECT_EQ(a.proj_j, (Interval{Rational(1, 2), Rational(2, 3)}));
    EXPECT_EQ(a.proj_jt, (Interval{Rational(1, 2), Rational(5, 8)}));
    EXPECT_EQ(a.order, 1u);
    EXPECT_EQ(a.generation, 1u);

    const Hump b = hump_at(Rational(5, 8));
    EXPECT_EQ(b.order, 2u);
    EXPECT_EQ(b.interval_x.width(), Rational(1, 16));
    EXPECT_EQ(b.proj_j.width(), Rational(2, 3) / 16);
    EXPECT_FALSE(b.leading);

    const Hump c = hump_at(Rational(7, 8));
    EXPECT_EQ(word_string(c.word.digits()), "111000");

    EXPECT_THROW(hump_at(Rational(1, 8)), not_balanced);
    EXPECT_THROW(hump_at(Rational(1, 3)), not_balanced);
    EXPECT_FALSE(analyze_word({0, 0}));
    EXPECT_FALSE(analyze_word({0}));
    EXPECT_FALSE(analyze_word({}));
}

TEST(Humps, BaseValueAndNesting)
{
    for (std::size_t m = 1; m <= 5; ++m) {
        for (const Hump& h : enumerate_balanced(m)) {
            EXPECT_EQ(h.base, eval_dyadic(h.x0()));
            EXPECT_EQ(h.base, eval_dyadic(h.interval_x.hi));
            if (h.generation < 2) {
                continue;
            }
            // Parent: the prefix up to the previous return to 0.
            const auto& walk = h.word.walk();
            std::size_t cut = walk.size() - 1;
            while (walk[cut - 1] != 0) {
                --cut;
            }
            const auto parent = analyze_word(Bits(h.word.digits().begin(), h.word.digits().begin() + static_cast<long>(cut)));
            ASSERT_TRUE(parent);
            EXPECT_EQ(parent->generation, h.generation - 1);
            EXPECT_TRUE(parent->proj_j.contains(h.proj_j));
        }
    }
}

// Every dyadic k/2^d, d <= 10, lies in I(x0) for a generation-1 hump.
TEST(Humps, DyadicCoverage)
{
    const long scale_bits = 20;
    std::vector<int> diff((std::size_t{1} << scale_bits) + 2, 0);
    for (std::size_t m = 1; m <= 10; ++m) {
        for (const Hump& h : enumerate_balanced(m, HumpFilter::of_generation(1))) {
            const long lo = detail::scale2(h.interval_x.lo, scale_bits).get_num().get_si();
            const long hi = detail::scale2(h.interval_x.hi, scale_bits).get_num().get_si();
            ++diff[static_cast<std::size_t>(lo)];
            --diff[static_cast<std::size_t>(hi) + 1];
        }
    }
    std::vector<int> cover(diff.size());
    int run = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        run += diff[i];
        cover[i] = run;
    }
    for (long k = 1; k < 1024; ++k) {
        EXPECT_GT(cover[static_cast<std::size_t>(k << (scale_bits - 10))], 0) << k << "/1024";
    }
}

TEST(Humps, TruncatedHitsComplementSymmetry)
{
    oracle::Gen gen(19);
    for (int i = 0; i < 60; ++i) {
        const Rational y = oracle::frac(static_cast<long>(gen.size(1, 2 * 256 - 1)), 3 * 256);
        const auto hits = truncated_hits(y, 5);
        std::set<Bits> words;
        for (const auto& h : hits) {
            words.insert(h.word.digits());
            EXPECT_TRUE(h.proj_jt.contains(y));
        }
        for (const auto& w : words) {
            Bits c = w;
            for (auto& b : c) {
                b ^= 1;
            }
            EXPECT_TRUE(words.count(c)) << to_string(y);
        }
    }
}

// Pruned search against a full scan of all humps of order <= 5.
TEST(Humps, TruncatedHitsMatchesFullScan)
{
    std::vector<Hump> all{Hump::root()};
    for (std::size_t m = 1; m <= 5; ++m) {
        for (auto& h : enumerate_balanced(m)) {
            all.push_back(std::move(h));
        }
    }
    for (long j = 0; j <= 2 * 64; ++j) {
        const Rational y = oracle::frac(j, 3 * 64);
        std::size_t expected = 0;
        for (const auto& h : all) {
            expected += h.proj_jt.contains(y);
        }
        EXPECT_EQ(truncated_hits(y, 5).size(), expected) << to_string(y);
    }
    EXPECT_EQ(truncated_hits(Rational(1, 8), 1).size(), 1u);
}

TEST(Humps, DyadicPartner)
{
    for (long d = 1; d <= 8; ++d) {
        for (long k = 1; k < (1L << d); k += 2) {
            const Rational x = detail::scale2(Rational(k), -d);
            const Rational p = dyadic_partner(x);
            EXPECT_NE(p, x);
            EXPECT_EQ(eval_dyadic(p), eval_dyadic(x)) << to_string(x);
            EXPECT_GT(to_binary(p).preperiod.size(), to_binary(x).preperiod.size()) << to_string(x);
        }
    }
    EXPECT_THROW(dyadic_partner(Rational(0)), out_of_range);
    EXPECT_THROW(dyadic_partner(Rational(1, 3)), error);
}
