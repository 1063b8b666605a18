#pragma once

// Evaluation of the Takagi function T(x) = sum 2^-n phi(2^n x).
//
// All exact evaluation goes through the digit recurrence
//
//     D_i = D_{i-1} + (-1)^eps_i,   v_i = v_{i-1} + eps_i (D_{i-1} + r_{i-1}) / 2^i,
//
// where v_i = T_i at the dyadic point of the first i digits and r is the sign
// sequence (all +1 for T). Past the i-th digit the graph is v_i plus a 2^-i
// copy of t -> D_i t + f(t), which gives closed forms at periodic tails.

#include "exact.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace takagi {

// Finite binary word with its walk and partial-sum value.
class DigitWord {
public:
    DigitWord() = default;

    const Bits& digits() const noexcept { return digits_; }
    // walk()[i] = D_{i+1}; D_0 = 0 is implicit.
    const std::vector<long>& walk() const noexcept { return walk_; }
    const Rational& value() const noexcept { return value_; }

    std::size_t size() const noexcept { return digits_.size(); }
    long slope() const noexcept { return walk_.empty() ? 0 : walk_.back(); }

    // Dyadic point 0.<digits>.
    Rational point() const { return detail::from_bits(digits_); }

    void push_back(std::uint8_t eps)
    {
        const long d = slope();
        const long i = static_cast<long>(digits_.size()) + 1;
        if (eps) {
            value_ += detail::scale2(Rational(d + 1), -i);
        }
        digits_.push_back(eps);
        walk_.push_back(eps ? d - 1 : d + 1);
    }

    static DigitWord from_bits(const Bits& bits)
    {
        DigitWord w;
        for (auto b : bits) {
            w.push_back(b);
        }
        return w;
    }

    friend bool operator==(const DigitWord& a, const DigitWord& b) { return a.digits_ == b.digits_; }

private:
    Bits digits_;
    std::vector<long> walk_;
    Rational value_ = 0;
};

inline DigitWord extend_word(DigitWord w, std::uint8_t eps)
{
    w.push_back(eps ? 1 : 0);
    return w;
}

inline DigitWord parse_word(std::string_view text)
{
    DigitWord w;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw error("binary word may only contain 0 and 1: '" + std::string(text) + "'");
        }
        w.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

inline std::string word_string(const Bits& bits)
{
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s += static_cast<char>('0' + b);
    }
    return s;
}

namespace detail {

struct all_plus {
    int operator()(std::size_t) const { return 1; }
};

// f(x) for an eventually periodic digit sequence and an eventually periodic
// sign sequence r (sign(n) = r_n, periodic from sign_pre with period sign_per).
template <typename Sign>
Rational eval_periodic(const BinaryExpansion& x, Sign sign, std::size_t sign_pre, std::size_t sign_per)
{
    const std::size_t digit_per = x.period.empty() ? 1 : x.period.size();
    const std::size_t pre = std::max(x.preperiod.size(), sign_pre);
    const std::size_t len = std::lcm(digit_per, sign_per);

    Rational v = 0;
    long d = 0;
    for (std::size_t i = 1; i <= pre; ++i) {
        const int r = sign(i - 1);
        const auto eps = x.digit(i);
        if (eps) {
            v += scale2(Rational(d + r), -static_cast<long>(i));
        }
        d += eps ? -r : r;
    }

    // Suffix t after `pre` digits is purely periodic with period `len`.
    Integer block = 0;
    Rational u = 0;
    long delta = 0;
    for (std::size_t i = 1; i <= len; ++i) {
        const int r = sign(pre + i - 1);
        const auto eps = x.digit(pre + i);
        block = 2 * block + eps;
        if (eps) {
            u += scale2(Rational(delta + r), -static_cast<long>(i));
        }
        delta += eps ? -r : r;
    }
    const Rational scale = pow2(-static_cast<long>(len));
    Rational t(block, Integer(pow2(static_cast<long>(len)).get_num() - 1));
    t.canonicalize();
    // F = u + 2^-len (delta t + F)
    Rational tail = (u + scale * delta * t) / (1 - scale);
    return v + scale2(Rational(d * t + tail), -static_cast<long>(pre));
}

} // namespace detail

// Exact T at a dyadic point in [0,1].
inline Rational eval_dyadic(const Rational& x)
{
    if (x < 0 || x > 1) {
        throw out_of_range("T is evaluated on [0,1], got " + to_string(x));
    }
    if (!is_dyadic(x)) {
        throw error("eval_dyadic needs a dyadic argument, got " + to_string(x));
    }
    if (x == 1) {
        return 0;
    }
    return DigitWord::from_bits(to_binary(x).preperiod).value();
}

inline Rational eval_dyadic(const ExactRational& x) { return eval_dyadic(x.value()); }

// Exact T at any rational in [0,1].
inline Rational eval_rational(const Rational& x)
{
    if (x < 0 || x > 1) {
        throw out_of_range("T is evaluated on [0,1], got " + to_string(x));
    }
    return detail::eval_periodic(to_binary(x), detail::all_plus{}, 0, 1);
}

inline Rational eval_expansion(const BinaryExpansion& x) { return detail::eval_periodic(x, detail::all_plus{}, 0, 1); }

// Exact maximum of T(t) + D t over t in [0,1]: max(0, D) + (2/3) 2^-|D|.
inline Rational envelope_max(long d)
{
    return Rational(std::max(0L, d)) + Rational(2, 3) * detail::pow2(-std::labs(d));
}

// Exact minimum of T(t) + D t over t in [0,1], attained at an endpoint.
inline Rational envelope_min(long d) { return Rational(std::min(0L, d)); }

struct Approximation {
    Rational value;
    Rational error_bound;
};

// T_n at the n-digit truncation of x. The remainder is 2^-n (D_n t + T(t))
// for some t in [0,1], so |T(x) - T_n| <= 2^-n max(-min(0, D_n), g(D_n)),
// which never exceeds (n + 2/3) 2^-n.
inline Approximation eval_approx(const BinaryExpansion& x, std::size_t n)
{
    if (n < 1) {
        throw error("eval_approx needs n >= 1");
    }
    const DigitWord w = DigitWord::from_bits(x.prefix(n));
    const long d = w.slope();
    Rational reach = envelope_max(d);
    if (-envelope_min(d) > reach) {
        reach = -envelope_min(d);
    }
    return {w.value(), detail::scale2(reach, -static_cast<long>(n))};
}

// |T(x) - (1/2 - 1/4 sum_{n<=N} (-1)^eps_{n+1} D_n / 2^n)|. The tail is
// bounded by (N+2) 2^-N / 4.
inline Rational d_expression_check(const Rational& x, std::size_t n_terms)
{
    const BinaryExpansion bx = to_binary(x);
    Rational sum = 0;
    long d = 0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        d += bx.digit(n) ? -1 : 1;
        const Rational term = detail::scale2(Rational(d), -static_cast<long>(n));
        if (bx.digit(n + 1)) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Rational residual = eval_expansion(bx) - (Rational(1, 2) - sum / 4);
    return abs(residual);
}

} // namespace takagi
