#pragma once

// Balanced dyadic rationals and the humps above them.
//
// A word of length 2m whose walk ends at 0 is balanced; over its interval
// I = [k/4^m, (k+1)/4^m] the graph of T is a 4^-m copy of the full graph
// lifted by a = T(x0). The copy's vertical extent is J = [a, a + (2/3)4^-m];
// with its own first-generation humps cut away it spans J^t = [a, a + 4^-m/2].

#include "takagi.hpp"

#include <optional>
#include <vector>

namespace takagi {

struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& y) const { return lo <= y && y <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    Rational width() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Hump {
    DigitWord word;
    std::size_t order = 0;
    std::size_t generation = 0;
    bool leading = true;
    Rational base = 0;
    Interval interval_x{0, 1};
    Interval proj_j{0, Rational(2, 3)};
    Interval proj_jt{0, Rational(1, 2)};

    Rational x0() const { return interval_x.lo; }

    // The whole graph, generation 0.
    static Hump root() { return Hump{}; }
};

namespace detail {

inline Hump make_hump(const DigitWord& w)
{
    Hump h;
    h.word = w;
    h.order = w.size() / 2;
    std::size_t zeros = 0;
    bool leading = true;
    for (long d : w.walk()) {
        zeros += d == 0;
        leading = leading && d >= 0;
    }
    h.generation = zeros;
    h.leading = leading;
    h.base = w.value();
    const long bits = static_cast<long>(w.size());
    const Rational width = pow2(-bits);
    h.interval_x = {w.point(), w.point() + width};
    h.proj_j = {h.base, h.base + Rational(2, 3) * width};
    h.proj_jt = {h.base, h.base + width / 2};
    return h;
}

} // namespace detail

// Hump for a balanced word; nullopt when the word is empty, of odd length or
// its walk does not return to 0.
inline std::optional<Hump> analyze_word(const Bits& bits)
{
    if (bits.empty() || bits.size() % 2 != 0) {
        return std::nullopt;
    }
    DigitWord w = DigitWord::from_bits(bits);
    if (w.slope() != 0) {
        return std::nullopt;
    }
    return detail::make_hump(w);
}

// The hump whose interval starts at the dyadic x0: the binary digits of x0,
// padded with zeros until the walk is back at 0 (7/8 = 0.111 -> 0.111000).
inline Hump hump_at(const Rational& x0)
{
    if (x0 <= 0 || x0 >= 1 || !is_dyadic(x0)) {
        throw not_balanced(to_string(x0) + " is not a balanced dyadic in (0,1)");
    }
    Bits bits = to_binary(x0).preperiod;
    long d = 0;
    for (auto b : bits) {
        d += b ? -1 : 1;
    }
    if (d > 0) {
        throw not_balanced(to_string(x0) + " has more zeros than ones and is not balanced");
    }
    bits.insert(bits.end(), static_cast<std::size_t>(-d), 0);
    return *analyze_word(bits);
}

struct HumpFilter {
    enum class Kind { all, leading, generation };
    Kind kind = Kind::all;
    std::size_t generation = 0;

    static HumpFilter all() { return {}; }
    static HumpFilter leading_only() { return {Kind::leading, 0}; }
    static HumpFilter of_generation(std::size_t g) { return {Kind::generation, g}; }

    bool accepts(const Hump& h) const
    {
        switch (kind) {
        case Kind::leading:
            return h.leading;
        case Kind::generation:
            return h.generation == generation;
        case Kind::all:
            break;
        }
        return true;
    }
};

inline constexpr std::size_t default_enumeration_order = 12;

// All humps of order m passing the filter, in lexicographic word order.
inline std::vector<Hump> enumerate_balanced(std::size_t m, HumpFilter filter = HumpFilter::all(),
                                            std::size_t max_order = default_enumeration_order)
{
    if (m < 1) {
        throw error("hump order must be at least 1");
    }
    if (m > max_order) {
        throw budget_exceeded("hump enumeration of order " + std::to_string(m) + " exceeds the budget of order "
                              + std::to_string(max_order));
    }
    const long len = static_cast<long>(2 * m);
    std::vector<Hump> out;
    DigitWord w;
    auto rec = [&](auto&& self, const DigitWord& cur) -> void {
        const long j = static_cast<long>(cur.size());
        if (j == len) {
            if (cur.slope() == 0) {
                Hump h = detail::make_hump(cur);
                if (filter.accepts(h)) {
                    out.push_back(std::move(h));
                }
            }
            return;
        }
        for (std::uint8_t eps : {0, 1}) {
            const long d = cur.slope() + (eps ? -1 : 1);
            if (std::labs(d) > len - j - 1) {
                continue;
            }
            if (filter.kind == HumpFilter::Kind::leading && d < 0) {
                continue;
            }
            self(self, extend_word(cur, eps));
        }
    };
    rec(rec, w);
    return out;
}

// Humps of order <= max_order (the whole graph included) whose truncated
// projection J^t contains y, in lexicographic word order.
//
// Words are pruned with the range of T(x0) over all completions of a prefix
// with walk D and value v at depth j:
//     v + min(0, D) 2^-j  <=  T(x0)  <=  v + (max(0, D) + (2/3) 2^-|D|) 2^-j.
// For dyadic y of depth n every hump of order m >= n meets y only at its base
// point, so max_order = n - 1 is complete for ordinates with finite level sets.
inline std::vector<Hump> truncated_hits(const Rational& y, std::size_t max_order)
{
    std::vector<Hump> out;
    if (Hump::root().proj_jt.contains(y)) {
        out.push_back(Hump::root());
    }
    const long len = static_cast<long>(2 * max_order);
    auto rec = [&](auto&& self, const DigitWord& cur) -> void {
        const long j = static_cast<long>(cur.size());
        const long d = cur.slope();
        if (j > 0 && j % 2 == 0 && d == 0) {
            const Rational top = cur.value() + detail::pow2(-j) / 2;
            if (cur.value() <= y && y <= top) {
                out.push_back(detail::make_hump(cur));
            }
        }
        if (j == len) {
            return;
        }
        for (std::uint8_t eps : {0, 1}) {
            const DigitWord next = extend_word(cur, eps);
            const long jn = j + 1;
            const long dn = next.slope();
            if (std::labs(dn) > len - jn) {
                continue;
            }
            const long min_order = (jn + 1) / 2;
            const Rational window = detail::pow2(-2 * min_order) / 2;
            const Rational lo = next.value() + detail::scale2(envelope_min(dn), -jn);
            const Rational hi = next.value() + detail::scale2(envelope_max(dn), -jn);
            if (lo > y || hi < y - window) {
                continue;
            }
            self(self, next);
        }
    };
    rec(rec, DigitWord{});
    return out;
}

// For dyadic x in (0,1), a strictly deeper dyadic x' with T(x') = T(x): the
// other endpoint of a balanced interval that has x as an endpoint.
inline Rational dyadic_partner(const Rational& x)
{
    if (x <= 0 || x >= 1) {
        throw out_of_range("dyadic_partner needs 0 < x < 1, got " + to_string(x));
    }
    if (!is_dyadic(x)) {
        throw error("dyadic_partner needs a dyadic argument, got " + to_string(x));
    }
    Bits digits = to_binary(x).preperiod;
    const std::size_t n = digits.size();
    std::size_t zeros = 0;
    for (auto b : digits) {
        zeros += b == 0;
    }
    if (zeros < n - zeros) {
        // x is the left end of a balanced interval of order n - zeros.
        digits.insert(digits.end(), n - 2 * zeros - 1, 0);
        digits.push_back(1);
    } else {
        // x is the right end of the balanced interval of 0.e1..e_{n-1} 0 1^{2z+2-n}.
        digits.back() = 0;
        digits.insert(digits.end(), 2 * zeros + 2 - n, 1);
    }
    return detail::from_bits(digits);
}

} // namespace takagi
