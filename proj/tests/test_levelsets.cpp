#include "oracles.hpp"

#include "takagi/levelsets.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace takagi;

TEST(LevelSets, Goldens)
{
    const LevelSetReport zero = classify(parse_exact("0"));
    EXPECT_EQ(zero.verdict, Verdict::finite);
    EXPECT_EQ(zero.preimages, (std::vector<Rational>{0, 1}));

    for (const char* y : {"1/8", "3/128", "1/256"}) {
        const LevelSetReport r = classify(parse_exact(y));
        EXPECT_EQ(r.verdict, Verdict::finite) << y;
        EXPECT_EQ(r.cardinality, 2u) << y;
        EXPECT_EQ(r.n_local, 1u) << y;
    }
    EXPECT_EQ(classify(parse_exact("1/8")).preimages, (std::vector<Rational>{Rational(1, 48), Rational(47, 48)}));
    EXPECT_EQ(classify(parse_exact("1/256")).preimages,
              (std::vector<Rational>{Rational(1, 3072), Rational(3071, 3072)}));
    EXPECT_EQ(classify(parse_exact("1/2")).verdict, Verdict::countably_infinite);
    EXPECT_EQ(classify(parse_exact("2/3")).verdict, Verdict::uncountable);
    EXPECT_EQ(classify(parse_exact("3/4")).verdict, Verdict::finite);
    EXPECT_EQ(classify(parse_exact("3/4")).cardinality, 0u);
}

TEST(LevelSets, IndeterminateOnBudget)
{
    const LevelSetReport r = classify(parse_exact("1/8"), Budget{4, 64});
    EXPECT_EQ(r.verdict, Verdict::indeterminate);
    EXPECT_FALSE(r.witness.empty());
    EXPECT_THROW(local_level_set_count(r), not_finite);
    EXPECT_THROW(local_level_set_count(classify(parse_exact("1/2"))), not_finite);
}

// Symmetry, parity and exactness on the depth-4 grid.
TEST(LevelSets, GridProperties)
{
    for (long j = 1; j < 2 * 256; ++j) {
        const LevelSetReport r = classify(make_rational(Integer(j), Integer(3 * 256)));
        ASSERT_NE(r.verdict, Verdict::indeterminate);
        if (r.verdict != Verdict::finite) {
            continue;
        }
        EXPECT_EQ(r.cardinality % 2, 0u) << j;
        EXPECT_GE(r.n_local, 1u);
        EXPECT_LE(2 * r.n_local, r.cardinality);
        for (std::size_t i = 0; i < r.preimages.size(); ++i) {
            EXPECT_EQ(r.preimages[i] + r.preimages[r.preimages.size() - 1 - i], 1);
        }
    }
}

namespace {

std::vector<long> abs_profile(const Bits& bits)
{
    std::vector<long> out;
    long d = 0;
    for (auto b : bits) {
        d += b ? -1 : 1;
        out.push_back(std::labs(d));
    }
    return out;
}

} // namespace

TEST(LevelSets, PartnersMatchBruteForce)
{
    for (std::size_t len = 1; len <= 10; ++len) {
        const std::size_t total = std::size_t{1} << len;
        std::vector<Bits> words(total);
        for (std::size_t code = 0; code < total; ++code) {
            words[code].resize(len);
            for (std::size_t i = 0; i < len; ++i) {
                words[code][i] = static_cast<std::uint8_t>(code >> (len - 1 - i) & 1);
            }
        }
        for (std::size_t code = 0; code < total; code += len) {
            const auto partners = local_partners(DigitWord::from_bits(words[code]));
            std::vector<Bits> expected;
            for (const auto& w : words) {
                if (abs_profile(w) == abs_profile(words[code])) {
                    expected.push_back(w);
                }
            }
            ASSERT_EQ(partners.size(), expected.size());
            for (std::size_t i = 0; i < partners.size(); ++i) {
                EXPECT_EQ(partners[i].digits(), expected[i]);
            }
        }
    }
}

// Equal |D| profiles give equal T once both words are padded to balance.
TEST(LevelSets, PartnerValueInvariance)
{
    oracle::Gen gen(29);
    for (int i = 0; i < 200; ++i) {
        const Bits w = gen.bits(gen.size(1, 10));
        std::set<Rational> values;
        for (const auto& p : local_partners(DigitWord::from_bits(w))) {
            Bits padded = p.digits();
            const long d = p.slope();
            padded.insert(padded.end(), static_cast<std::size_t>(std::labs(d)), d > 0 ? 1 : 0);
            values.insert(eval_dyadic(oracle::word_point(padded)));
        }
        EXPECT_EQ(values.size(), 1u) << word_string(w);
    }
}
