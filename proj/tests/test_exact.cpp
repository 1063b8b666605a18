#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace takagi;

TEST(Exact, ParseAndPrint)
{
    EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
    EXPECT_EQ(to_fraction(Rational(0)), "0/1");
    EXPECT_EQ(to_fraction(Rational(1)), "1/1");
    EXPECT_THROW(parse_rational("1/0"), error);
    EXPECT_THROW(parse_rational("x/2"), error);
    EXPECT_THROW(parse_rational(""), error);
}

TEST(Exact, SupportedClass)
{
    EXPECT_NO_THROW(parse_exact("1/3"));
    EXPECT_NO_THROW(parse_exact("5/96"));
    EXPECT_NO_THROW(parse_exact("3/1024"));
    EXPECT_NO_THROW(parse_exact("-7/12"));
    EXPECT_THROW(parse_exact("1/5"), unsupported_denominator);
    EXPECT_THROW(parse_exact("1/9"), unsupported_denominator);
    EXPECT_THROW(parse_exact("1/24") * parse_exact("1/3"), unsupported_denominator);

    ExactRational y = parse_exact("6/24");
    EXPECT_TRUE(y.dyadic());
    EXPECT_EQ(y.to_string(), "1/4");
    EXPECT_EQ(parse_exact("1/48").two_exponent(), 4u);
}

TEST(Exact, ClosureUnderSumAndDyadicProduct)
{
    oracle::Gen gen(11);
    for (int i = 0; i < 500; ++i) {
        auto pick = [&] {
            const unsigned long k = gen.size(0, 12);
            const Integer den = gen.size(0, 1) ? Integer(3) << k : Integer(1) << k;
            return make_rational(Integer(static_cast<long>(gen.size(0, 400)) - 200), den);
        };
        const ExactRational a = pick();
        const ExactRational b = pick();
        const ExactRational d = make_rational(Integer(static_cast<long>(gen.size(0, 64)) - 32), Integer(1) << 5);
        EXPECT_TRUE(is_supported((a + b).value()));
        EXPECT_TRUE(is_supported((a - b).value()));
        EXPECT_TRUE(is_supported((a * d).value()));
        EXPECT_EQ((a + b).value(), a.value() + b.value());
        EXPECT_EQ((a * d).value(), a.value() * d.value());
        EXPECT_EQ(a.scaled(-3).value(), a.value() / 8);
    }
}

TEST(Exact, BinaryGoldens)
{
    EXPECT_EQ(to_binary(Rational(1, 3)).to_string(), "0.(01)");
    EXPECT_EQ(to_binary(Rational(1, 6)).to_string(), "0.0(01)");
    EXPECT_EQ(to_binary(Rational(1, 2)).to_string(), "0.1(0)");
    EXPECT_EQ(to_binary(Rational(0)).to_string(), "0.(0)");
    EXPECT_EQ(to_binary(Rational(1)).to_string(), "0.(1)");
    EXPECT_EQ(to_binary(Rational(1, 48)).to_string(), "0.0000(01)");
    EXPECT_EQ(to_binary(Rational(47, 48)).to_string(), "0.1111(10)");
    EXPECT_THROW(to_binary(Rational(3, 2)), out_of_range);
}

// Preperiod length is the 2-adic valuation of the denominator and the period
// is the order of 2 modulo the odd part; the digits reproduce x.
TEST(Exact, BinaryRoundTripAndMinimality)
{
    for (unsigned long q = 1; q <= 200; ++q) {
        for (unsigned long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) {
                continue;
            }
            const Rational x(p, q);
            const BinaryExpansion b = to_binary(x);
            EXPECT_EQ(b.value(), x);
            if (x == 1) {
                continue;
            }
            unsigned long odd = q;
            std::size_t k = 0;
            while (odd % 2 == 0) {
                odd /= 2;
                ++k;
            }
            EXPECT_EQ(b.preperiod.size(), k) << p << "/" << q;
            std::size_t order = 0;
            if (odd > 1) {
                unsigned long r = 1;
                do {
                    r = 2 * r % odd;
                    ++order;
                } while (r != 1);
            }
            EXPECT_EQ(b.period.size(), order) << p << "/" << q;
            for (std::size_t i = 1; i <= 3 * (k + order) + 2; ++i) {
                EXPECT_EQ(b.digit(i), b.prefix(i).back());
            }
        }
    }
}

TEST(Exact, OrdinateDepth)
{
    EXPECT_EQ(ordinate_depth(parse_exact("1/8")), 2u);
    EXPECT_EQ(ordinate_depth(parse_exact("1/48")), 2u);
    EXPECT_EQ(ordinate_depth(parse_exact("0")), 0u);
    EXPECT_EQ(ordinate_depth(parse_exact("1/2")), 1u);
}
