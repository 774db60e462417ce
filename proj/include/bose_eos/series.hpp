#ifndef BOSE_EOS_SERIES_HPP
#define BOSE_EOS_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

// Truncated series in √γ with exact coefficients q · (√π)^p · r^j.
//
// A HalfSeries of order N keeps the powers γ^{n/2}, n = 0..N. Every operation
// truncates to the smaller operand order, so nothing beyond N is ever implied.

namespace bose_eos::series
{

using rational = boost::multiprecision::cpp_rational;

/// q · (√π)^p · r^j
struct Coefficient {
    rational q;
    int p = 0;
    int j = 0;
};

/// Exponents of one basis monomial γ^{n/2} (√π)^p r^j.
struct Monomial {
    int n = 0;
    int p = 0;
    int j = 0;

    friend bool operator<(const Monomial &a, const Monomial &b)
    {
        return std::tie(a.n, a.j, a.p) < std::tie(b.n, b.j, b.p);
    }
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

class HalfSeries
{
public:
    using term_map = std::map<Monomial, rational>;

    explicit HalfSeries(int order = 4) : order_(order)
    {
        if (order < 0) {
            throw domain_error("series order must be non-negative");
        }
    }

    static HalfSeries constant(int order, const rational &value)
    {
        HalfSeries out(order);
        out.add_term({0, 0, 0}, value);
        return out;
    }

    static HalfSeries one(int order) { return constant(order, rational(1)); }

    /// c · γ^{n/2}
    static HalfSeries monomial(int order, int n, const Coefficient &c)
    {
        HalfSeries out(order);
        out.add_term({n, c.p, c.j}, c.q);
        return out;
    }

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] const term_map &terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    [[nodiscard]] rational coefficient(int n, int p = 0, int j = 0) const
    {
        const auto it = terms_.find({n, p, j});
        return it == terms_.end() ? rational(0) : it->second;
    }

    /// All (√π, r) parts at power γ^{n/2}.
    [[nodiscard]] std::vector<std::pair<Monomial, rational>> slice(int n) const
    {
        std::vector<std::pair<Monomial, rational>> out;
        for (const auto &[key, q] : terms_) {
            if (key.n == n) {
                out.emplace_back(key, q);
            }
        }
        return out;
    }

    void add_term(const Monomial &key, const rational &q)
    {
        if (key.n > order_ || key.n < 0 || q == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(key, q);
        if (!inserted) {
            it->second += q;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] HalfSeries truncated(int order) const
    {
        HalfSeries out(std::min(order, order_));
        for (const auto &[key, q] : terms_) {
            out.add_term(key, q);
        }
        return out;
    }

    template <typename Pred>
    [[nodiscard]] HalfSeries filtered(Pred keep) const
    {
        HalfSeries out(order_);
        for (const auto &[key, q] : terms_) {
            if (keep(key)) {
                out.add_term(key, q);
            }
        }
        return out;
    }

    /// Σ q π^{p/2} r^j γ^{n/2}, summed in floating point term by term.
    [[nodiscard]] double evaluate(double gamma, double r) const
    {
        double sum = 0.0;
        for (const auto &[key, q] : terms_) {
            sum += term_value(key, q, gamma, r);
        }
        return sum;
    }

    static double term_value(const Monomial &key, const rational &q, double gamma, double r)
    {
        const double sqrt_pi = std::sqrt(std::numbers::pi);
        return q.convert_to<double>() * std::pow(sqrt_pi, key.p) * std::pow(r, key.j)
               * std::pow(std::sqrt(gamma), key.n);
    }

    HalfSeries &operator+=(const HalfSeries &other)
    {
        *this = *this + other;
        return *this;
    }

    friend HalfSeries operator+(const HalfSeries &a, const HalfSeries &b)
    {
        HalfSeries out(std::min(a.order_, b.order_));
        for (const auto &[key, q] : a.terms_) {
            out.add_term(key, q);
        }
        for (const auto &[key, q] : b.terms_) {
            out.add_term(key, q);
        }
        return out;
    }

    friend HalfSeries operator-(const HalfSeries &a)
    {
        HalfSeries out(a.order_);
        for (const auto &[key, q] : a.terms_) {
            out.add_term(key, -q);
        }
        return out;
    }

    friend HalfSeries operator-(const HalfSeries &a, const HalfSeries &b) { return a + (-b); }

    friend HalfSeries operator*(const HalfSeries &a, const HalfSeries &b)
    {
        HalfSeries out(std::min(a.order_, b.order_));
        for (const auto &[ka, qa] : a.terms_) {
            for (const auto &[kb, qb] : b.terms_) {
                if (ka.n + kb.n <= out.order_) {
                    out.add_term({ka.n + kb.n, ka.p + kb.p, ka.j + kb.j}, qa * qb);
                }
            }
        }
        return out;
    }

    friend HalfSeries operator*(const rational &c, const HalfSeries &a)
    {
        HalfSeries out(a.order_);
        for (const auto &[key, q] : a.terms_) {
            out.add_term(key, c * q);
        }
        return out;
    }

    /// Equal term sets; the orders may differ.
    friend bool operator==(const HalfSeries &a, const HalfSeries &b) { return a.terms_ == b.terms_; }

private:
    int order_;
    term_map terms_;
};

inline HalfSeries add(const HalfSeries &a, const HalfSeries &b) { return a + b; }
inline HalfSeries mul(const HalfSeries &a, const HalfSeries &b) { return a * b; }

inline HalfSeries scale(const HalfSeries &a, const Coefficient &c)
{
    HalfSeries out(a.order());
    for (const auto &[key, q] : a.terms()) {
        out.add_term({key.n, key.p + c.p, key.j + c.j}, c.q * q);
    }
    return out;
}

inline HalfSeries pow(const HalfSeries &a, int k)
{
    HalfSeries out = HalfSeries::one(a.order());
    for (int i = 0; i < k; ++i) {
        out = out * a;
    }
    return out;
}

/// (1 + t)^α = Σ_k C(α, k) t^k for a series t without constant term.
inline HalfSeries binomial_series(const rational &alpha, const HalfSeries &t)
{
    for (const auto &[key, q] : t.terms()) {
        if (key.n == 0) {
            throw domain_error("binomial_series needs a series without constant term");
        }
    }
    HalfSeries out = HalfSeries::one(t.order());
    HalfSeries power = HalfSeries::one(t.order());
    rational binom(1);
    for (int k = 1; k <= t.order() && !t.empty(); ++k) {
        binom *= (alpha - (k - 1));
        binom /= k;
        power = power * t;
        if (power.empty()) {
            break;
        }
        out += binom * power;
    }
    return out;
}

/// Square root of a series whose γ⁰ part is exactly 1.
inline HalfSeries sqrt_series(const HalfSeries &a)
{
    const auto head = a.slice(0);
    if (head.size() != 1 || !(head.front().first == Monomial{0, 0, 0}) || head.front().second != 1) {
        throw non_unit_constant_term("sqrt_series needs constant term 1");
    }
    // b_0 = 1, 2 b_n = a_n − Σ_{k=1}^{n−1} b_k b_{n−k}
    std::vector<HalfSeries::term_map> b(static_cast<std::size_t>(a.order()) + 1);
    b[0][{0, 0, 0}] = 1;
    for (int n = 1; n <= a.order(); ++n) {
        std::map<std::pair<int, int>, rational> acc;
        for (const auto &[key, q] : a.slice(n)) {
            acc[{key.p, key.j}] += q;
        }
        for (int k = 1; k < n; ++k) {
            for (const auto &[ka, qa] : b[static_cast<std::size_t>(k)]) {
                for (const auto &[kb, qb] : b[static_cast<std::size_t>(n - k)]) {
                    acc[{ka.p + kb.p, ka.j + kb.j}] -= qa * qb;
                }
            }
        }
        for (const auto &[pj, q] : acc) {
            if (q != 0) {
                b[static_cast<std::size_t>(n)][{n, pj.first, pj.second}] = q / 2;
            }
        }
    }
    HalfSeries out(a.order());
    for (const auto &slice : b) {
        for (const auto &[key, q] : slice) {
            out.add_term(key, q);
        }
    }
    return out;
}

/// S + γ dS/dγ: each γ^{n/2} coefficient times (1 + n/2). Applied to μ/(gρ)
/// this is c²/(gρ/m), since γ ∝ ρ at fixed a_s.
inline HalfSeries rho_log_derivative(const HalfSeries &mu_series)
{
    HalfSeries out(mu_series.order());
    for (const auto &[key, q] : mu_series.terms()) {
        out.add_term(key, q * rational(key.n + 2, 2));
    }
    return out;
}

enum class Quantity { depletion, mu, pressure, energy, sound };

inline constexpr Quantity all_quantities[] = {Quantity::depletion, Quantity::mu, Quantity::sound,
                                              Quantity::pressure, Quantity::energy};

inline std::string_view to_string(Quantity which)
{
    switch (which) {
        case Quantity::depletion:
            return "depletion";
        case Quantity::mu:
            return "mu";
        case Quantity::pressure:
            return "pressure";
        case Quantity::energy:
            return "energy";
        case Quantity::sound:
            return "sound";
    }
    return "unknown";
}

inline Quantity quantity_from_string(std::string_view name)
{
    for (const Quantity q : all_quantities) {
        if (to_string(q) == name) {
            return q;
        }
    }
    throw domain_error("unknown quantity: " + std::string(name));
}

inline constexpr int max_order = 4;

/// 8πγr
inline HalfSeries range_shift(int order)
{
    return HalfSeries::monomial(order, 2, {rational(8), 2, 1});
}

/// (m*/m)^α = (1 + 8πγr)^{−α}
inline HalfSeries mass_ratio_power(const rational &alpha, int order)
{
    return binomial_series(-alpha, range_shift(order));
}

/// κ = 32√γ / (3√π (1+8πγr)²)
inline HalfSeries kappa_series(int order)
{
    return HalfSeries::monomial(order, 1, {rational(32, 3), -1, 0}) * mass_ratio_power(2, order);
}

/// u = M/√(2gρ) = 1 − κ/2 + 5κ²/8 (without the κ² term when `drop_m2`).
inline HalfSeries u_series(int order = max_order, bool drop_m2 = false)
{
    if (order > max_order) {
        throw domain_error("series order is limited to 4 (through gamma^2)");
    }
    const HalfSeries kappa = kappa_series(order);
    HalfSeries u = HalfSeries::one(order) - rational(1, 2) * kappa;
    if (!drop_m2) {
        u += rational(5, 8) * (kappa * kappa);
    }
    return u;
}

/// Orders kept in the reference expansions: universal terms through
/// γ^{3/2}, terms linear in r through γ², nothing of higher degree in r.
inline bool in_kept_orders(const Monomial &key)
{
    if (key.j == 0) {
        return key.n <= 3;
    }
    return key.j == 1 && key.n <= 4;
}

inline HalfSeries truncate_to_kept_orders(const HalfSeries &s)
{
    return s.filtered(in_kept_orders);
}

/// Full (untruncated in r) expansion of one quantity through γ^{order/2}.
inline HalfSeries expand_raw(Quantity which, int order = max_order, bool drop_m2 = false)
{
    const HalfSeries u = u_series(order, drop_m2);
    const HalfSeries u3 = pow(u, 3);
    const HalfSeries lhy = HalfSeries::monomial(order, 1, {rational(1), -1, 0}); // √γ/√π
    const HalfSeries s2 = mass_ratio_power(2, order);

    auto mu = [&] { return HalfSeries::one(order) + rational(32, 3) * (lhy * s2 * u3); };
    auto pressure = [&] {
        const HalfSeries u5 = u3 * u * u;
        const HalfSeries u6 = u3 * u3;
        const HalfSeries s72 = mass_ratio_power(rational(7, 2), order);
        return HalfSeries::one(order) + rational(64, 3) * (lhy * s2 * u3)
               - rational(128, 15) * (lhy * s2 * u5) + rational(1024, 9) * (lhy * lhy * s72 * u6);
    };

    switch (which) {
        case Quantity::depletion: {
            // s^{3/2}(2√s − 1/√s) = 2s² − s
            const HalfSeries bracket = rational(2) * s2 - mass_ratio_power(1, order);
            return rational(8, 3) * (lhy * u3 * bracket);
        }
        case Quantity::mu:
            return mu();
        case Quantity::pressure:
            return pressure();
        case Quantity::energy:
            return rational(2) * mu() - pressure();
        case Quantity::sound:
            return sqrt_series(rho_log_derivative(mu()));
    }
    throw domain_error("unknown quantity");
}

/// Expansion truncated to the kept orders.
inline HalfSeries expand_quantity(Quantity which, int order = max_order, bool drop_m2 = false)
{
    return truncate_to_kept_orders(expand_raw(which, order, drop_m2));
}

/// Reference expansions, coefficient by coefficient.
inline HalfSeries reference_series(Quantity which)
{
    constexpr int order = max_order;
    HalfSeries out(order);
    auto put = [&out](int n, rational q, int p, int j = 0) { out.add_term({n, p, j}, q); };
    switch (which) {
        case Quantity::depletion: {
            // (8√γ/(3√π)) (1 − 16√γ/√π + 896γ/(3π) − 24π rγ + 640√π rγ^{3/2})
            HalfSeries bracket(order);
            bracket.add_term({0, 0, 0}, 1);
            bracket.add_term({1, -1, 0}, -16);
            bracket.add_term({2, -2, 0}, rational(896, 3));
            bracket.add_term({2, 2, 1}, -24);
            bracket.add_term({3, 1, 1}, 640);
            return HalfSeries::monomial(order, 1, {rational(8, 3), -1, 0}) * bracket;
        }
        case Quantity::mu:
            put(0, 1, 0);
            put(1, rational(32, 3), -1);
            put(2, rational(-512, 3), -2);
            put(3, rational(28672, 9), -3);
            put(3, rational(-512, 3), 1, 1);
            put(4, rational(16384, 3), 0, 1);
            return out;
        case Quantity::sound:
            put(0, 1, 0);
            put(1, 8, -1);
            put(2, rational(-608, 3), -2);
            put(3, rational(50432, 9), -3);
            put(3, rational(-640, 3), 1, 1);
            put(4, rational(29696, 3), 0, 1);
            return out;
        case Quantity::pressure:
            put(0, 1, 0);
            put(1, rational(64, 5), -1);
            put(3, rational(-8192, 3), -3);
            put(3, rational(-1024, 5), 1, 1);
            put(4, rational(4096, 9), 0, 1);
            return out;
        case Quantity::energy:
            put(0, 1, 0);
            put(1, rational(128, 15), -1);
            put(2, rational(-1024, 3), -2);
            put(3, rational(81920, 9), -3);
            put(3, rational(-2048, 15), 1, 1);
            put(4, rational(94208, 9), 0, 1);
            return out;
    }
    throw domain_error("unknown quantity");
}

/// Expansions are costly enough to build once per process.
inline const HalfSeries &cached_expansion(Quantity which, bool drop_m2 = false)
{
    static const auto table = [] {
        std::map<std::pair<Quantity, bool>, HalfSeries> t;
        for (const Quantity q : all_quantities) {
            t.emplace(std::pair{q, false}, expand_quantity(q, max_order, false));
            t.emplace(std::pair{q, true}, expand_quantity(q, max_order, true));
        }
        return t;
    }();
    return table.at({which, drop_m2});
}

// ---- formatting ----------------------------------------------------------

namespace detail
{
inline std::string half_power(std::string_view base, int twice)
{
    std::string out(base);
    if (twice == 2) {
        return out;
    }
    if (twice % 2 == 0) {
        return out + "^" + std::to_string(twice / 2);
    }
    return out + "^(" + std::to_string(twice) + "/2)";
}
} // namespace detail

/// Unsigned exact coefficient q·π^{p/2}, e.g. "81920/(9*pi^(3/2))" or "2048*pi^(1/2)/15".
inline std::string format_coefficient(const rational &q, int p)
{
    const rational magnitude = q < 0 ? rational(-q) : q;
    const auto num = boost::multiprecision::numerator(magnitude);
    const auto den = boost::multiprecision::denominator(magnitude);

    std::vector<std::string> top;
    std::vector<std::string> bottom;
    if (num != 1 || p <= 0) {
        top.push_back(num.str());
    }
    if (p > 0) {
        top.push_back(detail::half_power("pi", p));
    }
    if (den != 1) {
        bottom.push_back(den.str());
    }
    if (p < 0) {
        bottom.push_back(detail::half_power("pi", -p));
    }
    auto join = [](const std::vector<std::string> &parts) {
        std::string s;
        for (const auto &part : parts) {
            s += (s.empty() ? "" : "*") + part;
        }
        return s;
    };
    std::string out = join(top);
    if (!bottom.empty()) {
        out += "/";
        out += bottom.size() > 1 ? "(" + join(bottom) + ")" : bottom.front();
    }
    return out;
}

/// Unsigned exact form of one term, e.g. "128/(15*pi^(1/2)) * gamma^(1/2)".
inline std::string format_term(const Monomial &key, const rational &q)
{
    std::string out = format_coefficient(q, key.p);
    if (key.j == 1) {
        out += " * r";
    } else if (key.j > 1) {
        out += " * r^" + std::to_string(key.j);
    }
    if (key.n > 0) {
        out += " * " + detail::half_power("gamma", key.n);
    }
    return out;
}

/// One line per term: exact form followed by the decimal value of q·π^{p/2}.
inline std::string to_text(const HalfSeries &s)
{
    std::ostringstream os;
    os.precision(17);
    for (const auto &[key, q] : s.terms()) {
        const double decimal = q.convert_to<double>() * std::pow(std::sqrt(std::numbers::pi), key.p);
        os << (q < 0 ? "- " : "+ ") << format_term(key, q) << "    [" << decimal << "]\n";
    }
    return os.str();
}

/// Single-line exact form, e.g. "1 + 128/(15*pi^(1/2)) * gamma^(1/2) - ...".
inline std::string to_exact_string(const HalfSeries &s)
{
    std::string out;
    for (const auto &[key, q] : s.terms()) {
        if (out.empty()) {
            out = (q < 0 ? "-" : "") + format_term(key, q);
        } else {
            out += (q < 0 ? " - " : " + ") + format_term(key, q);
        }
    }
    return out.empty() ? "0" : out;
}

inline std::ostream &operator<<(std::ostream &os, const HalfSeries &s)
{
    return os << to_exact_string(s);
}

} // namespace bose_eos::series

#endif // BOSE_EOS_SERIES_HPP
