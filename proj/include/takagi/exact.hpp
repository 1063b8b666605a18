#pragma once

// Exact rationals whose reduced denominator is 2^k or 3*2^k, plus binary
// expansions of arbitrary rationals in [0,1].
//
// Every ordinate the level-set machinery handles lives in this class: the
// dyadic rationals, the hump maxima a + (2/3)4^-m, and the grid points
// j/(3*4^n). Values outside it are rejected with UnsupportedDenominator
// instead of being approximated.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace takagi {

using Rational = mpq_class;
using Integer = mpz_class;
using Bits = std::vector<std::uint8_t>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_denominator : error {
    using error::error;
};

struct out_of_range : error {
    using error::error;
};

struct budget_exceeded : error {
    using error::error;
};

struct not_closed : error {
    using error::error;
};

struct not_finite : error {
    using error::error;
};

struct not_balanced : error {
    using error::error;
};

namespace detail {

inline Rational pow2(long e)
{
    Rational r = 1;
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

// r * 2^e without renormalising through gcd.
inline Rational scale2(const Rational& r, long e)
{
    Rational out;
    if (e >= 0) {
        mpq_mul_2exp(out.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(out.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return out;
}

inline std::size_t twos(const Integer& z)
{
    if (z == 0) {
        return 0;
    }
    return mpz_scan1(z.get_mpz_t(), 0);
}

// Splits a positive denominator into (power of two, odd cofactor).
inline std::pair<std::size_t, Integer> split_den(const Integer& den)
{
    const std::size_t k = twos(den);
    Integer odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), k);
    return {k, odd};
}

inline Rational from_bits(const Bits& bits)
{
    Integer n = 0;
    for (auto b : bits) {
        n = 2 * n + b;
    }
    Rational r(n);
    return scale2(r, -static_cast<long>(bits.size()));
}

inline Integer bits_to_int(const Bits& bits)
{
    Integer n = 0;
    for (auto b : bits) {
        n = 2 * n + b;
    }
    return n;
}

} // namespace detail

inline std::string to_string(const Rational& r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Always "p/q", also for integers.
inline std::string to_fraction(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

// Parses "p/q", "p" or "-p/q".
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    Rational r;
    try {
        if (slash == std::string_view::npos) {
            r = Rational(Integer(std::string(text)));
        } else {
            Integer p(std::string(text.substr(0, slash)));
            Integer q(std::string(text.substr(slash + 1)));
            if (q == 0) {
                throw error("zero denominator in '" + std::string(text) + "'");
            }
            r = Rational(p, q);
            r.canonicalize();
        }
    } catch (const std::invalid_argument&) {
        throw error("not a rational: '" + std::string(text) + "'");
    }
    return r;
}

// True when the reduced denominator of r is 2^k or 3*2^k.
inline bool is_supported(const Rational& r)
{
    auto [k, odd] = detail::split_den(r.get_den());
    (void)k;
    return odd == 1 || odd == 3;
}

inline bool is_dyadic(const Rational& r)
{
    auto [k, odd] = detail::split_den(r.get_den());
    (void)k;
    return odd == 1;
}

class ExactRational {
public:
    ExactRational() = default;

    explicit ExactRational(Rational v) : value_(std::move(v))
    {
        value_.canonicalize();
        if (!is_supported(value_)) {
            throw unsupported_denominator("denominator of " + takagi::to_string(value_)
                                          + " is not 2^k or 3*2^k");
        }
    }

    ExactRational(long p) : value_(p) {}

    const Rational& value() const noexcept { return value_; }
    const Integer& num() const noexcept { return value_.get_num(); }
    const Integer& den() const noexcept { return value_.get_den(); }

    bool dyadic() const { return is_dyadic(value_); }

    // Exponent k of the 2^k factor in the reduced denominator.
    std::size_t two_exponent() const { return detail::twos(value_.get_den()); }

    std::string to_string() const { return takagi::to_string(value_); }

    ExactRational scaled(long e) const { return ExactRational(detail::scale2(value_, e), trusted{}); }

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b)
    {
        return ExactRational(Rational(a.value_ + b.value_));
    }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b)
    {
        return ExactRational(Rational(a.value_ - b.value_));
    }
    friend ExactRational operator-(const ExactRational& a) { return ExactRational(Rational(-a.value_), trusted{}); }

    // Product with a dyadic factor stays in the class; anything else is checked.
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b)
    {
        if (!a.dyadic() && !b.dyadic()) {
            throw unsupported_denominator("product of two non-dyadic values leaves the supported class");
        }
        return ExactRational(Rational(a.value_ * b.value_));
    }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend auto operator<=>(const ExactRational& a, const ExactRational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    struct trusted {};
    ExactRational(Rational v, trusted) : value_(std::move(v)) {}

    Rational value_ = 0;
};

inline ExactRational make_rational(const Integer& p, const Integer& q)
{
    if (q == 0) {
        throw error("zero denominator");
    }
    Rational r(p, q);
    r.canonicalize();
    return ExactRational(r);
}

inline ExactRational parse_exact(std::string_view text) { return ExactRational(parse_rational(text)); }

// Eventually periodic binary expansion 0.<preperiod>(<period>).
//
// An empty period means the expansion terminates (trailing zeros). The only
// expansion with period "1" is the one of x = 1 itself; dyadic x < 1 always
// use the terminating form.
struct BinaryExpansion {
    Bits preperiod;
    Bits period;

    bool terminating() const { return period.empty(); }

    // i-th digit (1-based), following the periodic tail.
    std::uint8_t digit(std::size_t i) const
    {
        if (i <= preperiod.size()) {
            return preperiod[i - 1];
        }
        if (period.empty()) {
            return 0;
        }
        return period[(i - 1 - preperiod.size()) % period.size()];
    }

    Bits prefix(std::size_t n) const
    {
        Bits out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = digit(i + 1);
        }
        return out;
    }

    Rational value() const
    {
        Rational head = detail::from_bits(preperiod);
        if (period.empty()) {
            return head;
        }
        const long p = static_cast<long>(period.size());
        Rational cycle(detail::bits_to_int(period), Integer(detail::pow2(p).get_num() - 1));
        cycle.canonicalize();
        return head + detail::scale2(cycle, -static_cast<long>(preperiod.size()));
    }

    std::string to_string() const
    {
        std::string s = "0.";
        for (auto b : preperiod) {
            s += static_cast<char>('0' + b);
        }
        // Terminating expansions are shown with period 0.
        s += '(';
        for (auto b : period) {
            s += static_cast<char>('0' + b);
        }
        s += period.empty() ? "0)" : ")";
        return s;
    }

    friend bool operator==(const BinaryExpansion&, const BinaryExpansion&) = default;
};

inline constexpr std::size_t max_period_length = std::size_t{1} << 24;

// Binary expansion of any rational in [0,1]. The preperiod is the 2-adic
// valuation of the denominator and the period is the multiplicative order of
// 2 modulo the odd part, so both are minimal and the form is canonical.
inline BinaryExpansion to_binary(const Rational& x_in)
{
    Rational x = x_in;
    x.canonicalize();
    if (x < 0 || x > 1) {
        throw out_of_range("binary expansion requires 0 <= x <= 1, got " + to_string(x));
    }
    BinaryExpansion out;
    if (x == 1) {
        out.period = {1};
        return out;
    }
    auto [k, odd] = detail::split_den(x.get_den());
    std::size_t period_len = 0;
    if (odd != 1) {
        Integer r = 2 % odd;
        period_len = 1;
        while (r != 1) {
            r = (2 * r) % odd;
            if (++period_len > max_period_length) {
                throw budget_exceeded("binary period of " + to_string(x) + " is too long");
            }
        }
    }
    Integer rem = x.get_num();
    const Integer& den = x.get_den();
    auto next = [&]() -> std::uint8_t {
        rem *= 2;
        if (rem >= den) {
            rem -= den;
            return 1;
        }
        return 0;
    };
    out.preperiod.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.preperiod.push_back(next());
    }
    out.period.reserve(period_len);
    for (std::size_t i = 0; i < period_len; ++i) {
        out.period.push_back(next());
    }
    return out;
}

inline BinaryExpansion to_binary(const ExactRational& x) { return to_binary(x.value()); }

// Least n with y*4^n (dyadic y) or 3y*4^n (denominator-3 y) integral. Hump
// orders m >= n cannot contain y in an open projection.
inline std::size_t ordinate_depth(const ExactRational& y) { return (y.two_exponent() + 1) / 2; }

} // namespace takagi
