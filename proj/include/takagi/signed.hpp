#pragma once

// Signed Takagi functions f(x) = sum r_n 2^-n phi(2^n x) for eventually
// periodic sign sequences r.
//
// The walk becomes D_k = sum_{j<=k} r_{j-1} (-1)^eps_j and the digit
// recurrence picks up the sign of the new summand:
//     v_i = v_{i-1} + eps_i (D_{i-1} + r_{i-1}) / 2^i.
// The extrema come from the first-passage times tau_j = inf{n : s_n = j} of
// the sign partial sums s_n = r_0 + ... + r_{n-1}:
//     max f = sum_k 2^-tau_{2k-1},   min f = -sum_k 2^-tau_{1-2k}.

#include "humps.hpp"
#include "stats.hpp"

#include <map>
#include <optional>
#include <string_view>

namespace takagi {

class SignSequence {
public:
    SignSequence() : period_{1} {}

    SignSequence(std::vector<int> preperiod, std::vector<int> period)
        : preperiod_(std::move(preperiod)), period_(std::move(period))
    {
        if (period_.empty()) {
            throw error("sign sequence needs a nonempty period");
        }
        for (int s : preperiod_) {
            check(s);
        }
        for (int s : period_) {
            check(s);
        }
        canonicalize();
    }

    static SignSequence parse(std::string_view period, std::string_view preperiod = {})
    {
        return SignSequence(signs(preperiod), signs(period));
    }

    static SignSequence all_plus() { return SignSequence({}, {1}); }
    static SignSequence alternating() { return SignSequence({}, {1, -1}); }

    const std::vector<int>& preperiod() const noexcept { return preperiod_; }
    const std::vector<int>& period() const noexcept { return period_; }

    int operator[](std::size_t n) const
    {
        if (n < preperiod_.size()) {
            return preperiod_[n];
        }
        return period_[(n - preperiod_.size()) % period_.size()];
    }

    // s_n = r_0 + ... + r_{n-1}
    long partial_sum(std::size_t n) const
    {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s += (*this)[i];
        }
        return s;
    }

    long drift() const
    {
        long d = 0;
        for (int s : period_) {
            d += s;
        }
        return d;
    }

    // The sequence (r_k, r_{k+1}, ...).
    SignSequence shifted(std::size_t k) const
    {
        if (k <= preperiod_.size()) {
            return SignSequence(std::vector<int>(preperiod_.begin() + static_cast<long>(k), preperiod_.end()), period_);
        }
        const std::size_t rot = (k - preperiod_.size()) % period_.size();
        std::vector<int> p(period_.begin() + static_cast<long>(rot), period_.end());
        p.insert(p.end(), period_.begin(), period_.begin() + static_cast<long>(rot));
        return SignSequence({}, p);
    }

    SignSequence negated() const
    {
        auto flip = [](std::vector<int> v) {
            for (int& s : v) {
                s = -s;
            }
            return v;
        };
        return SignSequence(flip(preperiod_), flip(period_));
    }

    std::string to_string() const
    {
        auto str = [](const std::vector<int>& v) {
            std::string s;
            for (int x : v) {
                s += x > 0 ? '+' : '-';
            }
            return s;
        };
        return str(preperiod_) + "(" + str(period_) + ")";
    }

    friend bool operator==(const SignSequence&, const SignSequence&) = default;
    friend auto operator<=>(const SignSequence&, const SignSequence&) = default;

private:
    static void check(int s)
    {
        if (s != 1 && s != -1) {
            throw error("signs must be +1 or -1");
        }
    }

    static std::vector<int> signs(std::string_view text)
    {
        std::vector<int> out;
        for (char c : text) {
            if (c == '+') {
                out.push_back(1);
            } else if (c == '-') {
                out.push_back(-1);
            } else {
                throw error("sign string may only contain '+' and '-': '" + std::string(text) + "'");
            }
        }
        return out;
    }

    void canonicalize()
    {
        const std::size_t n = period_.size();
        for (std::size_t p = 1; p < n; ++p) {
            if (n % p != 0) {
                continue;
            }
            bool repeats = true;
            for (std::size_t i = p; i < n && repeats; ++i) {
                repeats = period_[i] == period_[i - p];
            }
            if (repeats) {
                period_.resize(p);
                break;
            }
        }
        while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
            preperiod_.pop_back();
            std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
        }
    }

    std::vector<int> preperiod_;
    std::vector<int> period_;
};

inline Rational eval_signed_dyadic(const Rational& x, const SignSequence& r)
{
    if (x < 0 || x > 1) {
        throw out_of_range("f is evaluated on [0,1], got " + to_string(x));
    }
    if (!is_dyadic(x)) {
        throw error("eval_signed_dyadic needs a dyadic argument, got " + to_string(x));
    }
    if (x == 1) {
        return 0;
    }
    const Bits digits = to_binary(x).preperiod;
    Rational v = 0;
    long d = 0;
    for (std::size_t i = 1; i <= digits.size(); ++i) {
        const int s = r[i - 1];
        if (digits[i - 1]) {
            v += detail::scale2(Rational(d + s), -static_cast<long>(i));
        }
        d += digits[i - 1] ? -s : s;
    }
    return v;
}

inline Rational eval_signed_expansion(const BinaryExpansion& x, const SignSequence& r)
{
    return detail::eval_periodic(
        x, [&r](std::size_t n) { return r[n]; }, r.preperiod().size(), r.period().size());
}

// Exact f at any rational in [0,1].
inline Rational eval_signed_rational(const Rational& x, const SignSequence& r)
{
    if (x < 0 || x > 1) {
        throw out_of_range("f is evaluated on [0,1], got " + to_string(x));
    }
    return eval_signed_expansion(to_binary(x), r);
}

// tau_{2k-1} for k = 1, 2, ... (or tau_{1-2k} for the negative side).
//
// Past the preperiod s_{n+L} = s_n + d with L the period length and d the
// drift. For levels j above every value of s_n with n <= P + L this gives
// tau_{j+d} = tau_j + L, hence tau_{j+2d} = tau_j + 2L on odd levels. Levels
// that are never reached have tau = infinity (nullopt).
class PassageTimes {
public:
    std::optional<std::size_t> operator[](std::size_t k) const // tau_{2k+1}, 0-based k
    {
        if (k < head_.size()) {
            return head_[k];
        }
        if (block_levels_ == 0) {
            return std::nullopt;
        }
        const std::size_t base = head_.size() - block_levels_;
        const std::size_t q = (k - base) / block_levels_;
        return *head_[base + (k - base) % block_levels_] + q * block_shift_;
    }

    const std::vector<std::optional<std::size_t>>& head() const noexcept { return head_; }
    bool infinite_tail() const noexcept { return block_levels_ == 0; }
    std::size_t block_levels() const noexcept { return block_levels_; }
    std::size_t block_shift() const noexcept { return block_shift_; }

    // sum_k 2^-tau_{2k-1}, exact.
    Rational weight() const
    {
        Rational head_sum = 0;
        for (const auto& t : head_) {
            if (t) {
                head_sum += detail::pow2(-static_cast<long>(*t));
            }
        }
        if (block_levels_ == 0) {
            return head_sum;
        }
        Rational block_sum = 0;
        for (std::size_t i = head_.size() - block_levels_; i < head_.size(); ++i) {
            block_sum += detail::pow2(-static_cast<long>(*head_[i]));
        }
        const Rational ratio = detail::pow2(-static_cast<long>(block_shift_));
        return head_sum + block_sum * ratio / (1 - ratio);
    }

    friend PassageTimes first_passages_positive(const SignSequence& r);

private:
    std::vector<std::optional<std::size_t>> head_;
    std::size_t block_levels_ = 0;
    std::size_t block_shift_ = 0;
};

inline PassageTimes first_passages_positive(const SignSequence& r)
{
    const std::size_t pre = r.preperiod().size();
    const std::size_t len = r.period().size();
    const long d = r.drift();
    long top = 0;
    long s = 0;
    for (std::size_t n = 0; n < pre + len; ++n) {
        s += r[n];
        top = std::max(top, s);
    }
    const long highest = d > 0 ? top + 2 * d : top;

    std::map<long, std::size_t> first;
    s = 0;
    for (std::size_t n = 1; first.size() < static_cast<std::size_t>(std::max(0L, highest)); ++n) {
        s += r[n - 1];
        if (s > 0) {
            first.emplace(s, n);
        }
        if (d <= 0 && n >= pre + len) {
            break;
        }
    }
    PassageTimes out;
    long max_odd = highest % 2 == 0 ? highest - 1 : highest;
    for (long j = 1; j <= max_odd; j += 2) {
        auto it = first.find(j);
        out.head_.push_back(it == first.end() ? std::nullopt : std::optional<std::size_t>(it->second));
    }
    if (d > 0) {
        // The d odd levels in (top, top + 2d] close head_ and repeat.
        out.block_levels_ = static_cast<std::size_t>(d);
        out.block_shift_ = 2 * len;
    }
    return out;
}

enum class Side { positive, negative };

inline PassageTimes first_passages(const SignSequence& r, Side side)
{
    return side == Side::positive ? first_passages_positive(r) : first_passages_positive(r.negated());
}

struct SignedExtrema {
    Rational max_value;
    Rational min_value;
    PassageTimes positive;
    PassageTimes negative;

    Rational height() const { return max_value - min_value; }
};

inline SignedExtrema extrema(const SignSequence& r)
{
    SignedExtrema e;
    e.positive = first_passages(r, Side::positive);
    e.negative = first_passages(r, Side::negative);
    e.max_value = e.positive.weight();
    e.min_value = -e.negative.weight();
    if (e.height() > Rational(2, 3)) {
        throw error("height of the graph exceeds 2/3 for r = " + r.to_string());
    }
    return e;
}

// C(r) = sum_n r_n / 2^{n+2}.
inline Rational signed_constant(const SignSequence& r)
{
    Rational head = 0;
    const std::size_t pre = r.preperiod().size();
    for (std::size_t n = 0; n < pre; ++n) {
        head += detail::pow2(-static_cast<long>(n) - 2) * r[n];
    }
    Rational block = 0;
    const std::size_t len = r.period().size();
    for (std::size_t i = 0; i < len; ++i) {
        block += detail::pow2(-static_cast<long>(pre + i) - 2) * r[pre + i];
    }
    const Rational ratio = detail::pow2(-static_cast<long>(len));
    return head + block / (1 - ratio);
}

inline Rational signed_d_expression_check(const Rational& x, const SignSequence& r, std::size_t n_terms)
{
    const BinaryExpansion bx = to_binary(x);
    Rational sum = 0;
    long d = 0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const int s = r[n - 1];
        d += bx.digit(n) ? -s : s;
        const Rational term = detail::scale2(Rational(d), -static_cast<long>(n));
        if (bx.digit(n + 1)) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Rational residual = eval_signed_expansion(bx, r) - (signed_constant(r) - sum / 4);
    return abs(residual);
}

// Number of leading signed humps (walk >= 0 throughout, ending at 0) of order
// <= max_order, the whole graph included, whose truncated projection contains
// y. For a hump at x0 of order m the truncated projection is
// [f(x0), f(x0) + 4^-m/2] when r_{2m} = +1 and [f(x0) - 4^-m/2, f(x0)] otherwise.
inline std::size_t signed_truncated_local_count(const Rational& y, const SignSequence& r, std::size_t max_order,
                                                std::size_t order_budget = 16)
{
    if (max_order > order_budget) {
        throw budget_exceeded("signed hump search of order " + std::to_string(max_order) + " exceeds the budget of "
                              + std::to_string(order_budget));
    }
    const long len = static_cast<long>(2 * max_order);
    std::vector<std::pair<Rational, Rational>> envelope(static_cast<std::size_t>(len) + 1);
    for (long j = 0; j <= len; ++j) {
        const SignedExtrema e = extrema(r.shifted(static_cast<std::size_t>(j)));
        envelope[static_cast<std::size_t>(j)] = {e.min_value, e.max_value};
    }
    auto in_jt = [&](const Rational& base, long j) {
        const Rational half = detail::pow2(-j) / 2;
        if (r[static_cast<std::size_t>(j)] > 0) {
            return base <= y && y <= base + half;
        }
        return base - half <= y && y <= base;
    };

    std::size_t hits = in_jt(Rational(0), 0) ? 1 : 0;
    auto rec = [&](auto&& self, long j, long d, const Rational& v) -> void {
        if (j > 0 && j % 2 == 0 && d == 0 && in_jt(v, j)) {
            ++hits;
        }
        if (j == len) {
            return;
        }
        const int s = r[static_cast<std::size_t>(j)];
        for (std::uint8_t eps : {0, 1}) {
            const long jn = j + 1;
            const long dn = eps ? d - s : d + s;
            if (dn < 0 || dn > len - jn) {
                continue;
            }
            Rational vn = v;
            if (eps) {
                vn += detail::scale2(Rational(d + s), -jn);
            }
            const auto& [lo_f, hi_f] = envelope[static_cast<std::size_t>(jn)];
            const Rational lo = vn + detail::scale2(Rational(std::min(0L, dn) + lo_f), -jn);
            const Rational hi = vn + detail::scale2(Rational(std::max(0L, dn) + hi_f), -jn);
            const Rational window = detail::pow2(-2 * ((jn + 1) / 2)) / 2;
            if (lo - window > y || hi + window < y) {
                continue;
            }
            self(self, jn, dn, vn);
        }
    };
    rec(rec, 0, 0, Rational(0));
    return hits;
}

// Expected truncated local count for y uniform on the range of f:
// sum_{m<=M} C_m (4^-m / 2) / (max f - min f).
inline Rational signed_truncated_expectation(const SignSequence& r, std::size_t max_order)
{
    const SignedExtrema e = extrema(r);
    Rational s = 0;
    for (std::size_t m = 0; m <= max_order; ++m) {
        s += Rational(catalan(m)) * detail::pow2(-2 * static_cast<long>(m)) / 2;
    }
    return s / e.height();
}

// Half the Catalan tail, sum_{m>M} C_m 4^-m / 2 = (2 - sum_{m<=M} C_m 4^-m) / 2.
inline Rational catalan_half_tail(std::size_t max_order) { return (2 - catalan_series_exact(max_order)) / 2; }

} // namespace takagi
