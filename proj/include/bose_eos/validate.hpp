#ifndef BOSE_EOS_VALIDATE_HPP
#define BOSE_EOS_VALIDATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eos.hpp"
#include "gap_solver.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "series.hpp"
#include "si_direct.hpp"
#include "units.hpp"

// Self-checks run by `bose-eos validate`. Each check reports observed versus
// expected values so a failure can be read without a debugger.

namespace bose_eos::validation
{

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    bool drop_m2 = false;      // rebuild the series without the second-order gap correction
    double kappa_scale = 1.0;  // test hook: perturbs κ in the gap-closure check
    std::uint64_t seed = 20240611;
};

/// ⁷Li-like benchmark: a_s = 1.59e-7 m.
inline constexpr double benchmark_a_s = 1.59e-7;

namespace detail
{
inline std::string num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline double relative(double observed, double expected)
{
    return std::abs(observed - expected) / std::abs(expected);
}

/// Slots where two series differ, as "slot: observed vs expected".
inline std::string series_diff(const series::HalfSeries &observed, const series::HalfSeries &expected)
{
    std::set<series::Monomial> keys;
    for (const auto &[k, q] : observed.terms()) {
        keys.insert(k);
    }
    for (const auto &[k, q] : expected.terms()) {
        keys.insert(k);
    }
    std::string out;
    for (const auto &k : keys) {
        const auto a = observed.coefficient(k.n, k.p, k.j);
        const auto b = expected.coefficient(k.n, k.p, k.j);
        if (a != b) {
            const series::rational unit(1);
            out += (out.empty() ? "" : "; ") + series::format_term(k, unit) + ": observed " + a.str()
                   + " expected " + b.str();
        }
    }
    return out;
}

inline CheckResult compare_series(std::string name, const series::HalfSeries &observed,
                                  const series::HalfSeries &expected)
{
    if (observed == expected) {
        return {std::move(name), true, "exact match: " + series::to_exact_string(expected)};
    }
    return {std::move(name), false, series_diff(observed, expected)};
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}
} // namespace detail

inline std::vector<CheckResult> coefficient_checks(bool drop_m2)
{
    std::vector<CheckResult> out;
    for (const auto q : {series::Quantity::depletion, series::Quantity::mu, series::Quantity::pressure,
                         series::Quantity::energy}) {
        out.push_back(detail::compare_series("coefficients:" + std::string(series::to_string(q)),
                                             series::expand_quantity(q, series::max_order, drop_m2),
                                             series::reference_series(q)));
    }
    const auto mu = series::expand_quantity(series::Quantity::mu, series::max_order, drop_m2);
    const auto sound = series::truncate_to_kept_orders(series::sqrt_series(series::rho_log_derivative(mu)));
    out.push_back(detail::compare_series("coefficients:sound", sound,
                                         series::reference_series(series::Quantity::sound)));
    return out;
}

inline CheckResult legendre_series_check(bool drop_m2)
{
    using series::Quantity;
    const auto e = series::expand_quantity(Quantity::energy, series::max_order, drop_m2);
    const auto mu = series::expand_quantity(Quantity::mu, series::max_order, drop_m2);
    const auto p = series::expand_quantity(Quantity::pressure, series::max_order, drop_m2);
    return detail::compare_series("legendre-series", e, series::rational(2) * mu - p);
}

inline CheckResult legendre_numeric_check(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_gamma(std::log(1e-8), std::log(4e-3));
    std::uniform_real_distribution<double> range(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const StatePoint point(std::exp(log_gamma(rng)), range(rng));
        const auto rep = evaluate(point, {Mode::exact, false});
        worst = std::max(worst, std::abs(rep.energy_ratio + rep.pressure_ratio - 2.0 * rep.mu_ratio)
                                    / std::abs(rep.mu_ratio));
    }
    return {"legendre-numeric", worst <= 1e-14, "max |E+P-2mu|/|mu| = " + detail::num(worst) + " (limit 1e-14)"};
}

inline CheckResult sound_fd_check()
{
    const double gamma = 1e-6;
    const double r = 0.5;
    const auto params = GasParamsSI::from_state(constants::lithium7_mass, benchmark_a_s, gamma, r);
    const double fd = sound_ratio_numeric(params);
    const double ser = evaluate(StatePoint(gamma, r), {Mode::series, false}).sound_ratio;
    const double rel = detail::relative(fd, ser);
    return {"sound-finite-difference", rel <= 1e-6,
            "finite difference " + detail::num(fd) + " vs series " + detail::num(ser) + ", rel "
                + detail::num(rel) + " (limit 1e-6)"};
}

inline std::vector<CheckResult> quadrature_checks()
{
    std::vector<CheckResult> out;
    const auto i11 = quad::p11_T0_dimensionless();
    const auto i22 = quad::p22_T0_dimensionless();
    const double r11 = detail::relative(i11.raw_value, 2.0 / 3.0);
    const double r22 = detail::relative(i22.raw_value, -1.0 / 3.0);
    out.push_back({"quadrature-p11", r11 <= 1e-8,
                   "I11 = " + detail::num(i11.raw_value) + " vs 2/3, rel " + detail::num(r11)});
    out.push_back({"quadrature-p22", r22 <= 1e-8,
                   "I22 = " + detail::num(i22.raw_value) + " vs -1/3, rel " + detail::num(r22)});
    return out;
}

/// M² − 2gρ + 2g P11(M) at the exact root, relative to 2gρ, over random points.
inline CheckResult gap_closure_check(std::uint64_t seed, double kappa_scale)
{
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> log_gamma(std::log(1e-8), std::log(4e-3));
    std::uniform_real_distribution<double> range(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double gamma = std::exp(log_gamma(rng));
        const auto params =
            GasParamsSI::from_state(constants::lithium7_mass, benchmark_a_s, gamma, range(rng));
        const StatePoint point = reduce(params);
        const double u = solve_exact(kappa_scale * kappa_of(point));
        const double M = m_dimensionful(u, params);
        const double g = coupling_g(params);
        const double two_g_rho = 2.0 * g * params.density_per_m3;
        const double residual = M * M - two_g_rho + 2.0 * g * quad::closed_form_P11(point, M, params);
        worst = std::max(worst, std::abs(residual) / two_g_rho);
    }
    return {"gap-closure", worst <= 1e-12, "max relative residual " + detail::num(worst) + " (limit 1e-12)"};
}

inline CheckResult perturbation_order_check()
{
    std::vector<double> kappas;
    std::vector<double> diffs;
    for (int i = 0; i < 20; ++i) {
        const double kappa = 1e-4 * std::pow(100.0, i / 19.0);
        kappas.push_back(kappa);
        diffs.push_back(std::abs(solve_exact(kappa) - solve_perturbative(kappa)));
    }
    const double slope = detail::loglog_slope(kappas, diffs);
    return {"perturbation-order", slope >= 2.9, "log-log slope " + detail::num(slope) + " (need >= 2.9)"};
}

/// The γ¹ energy term shifts (E−1)/√γ by 22.6√γ relative, so the limit is
/// probed at γ = 1e-12 where that shift is 2.3e-5.
inline CheckResult lhy_limit_check(double gamma = 1e-12)
{
    const auto rep = evaluate(StatePoint(gamma, 0.0), {Mode::exact, false});
    const double observed = (rep.energy_ratio - 1.0) / std::sqrt(gamma);
    const double expected = 128.0 / (15.0 * std::sqrt(std::numbers::pi));
    const double rel = detail::relative(observed, expected);
    return {"lhy-limit", rel <= 1e-4,
            "gamma=" + detail::num(gamma) + ": (E-1)/sqrt(gamma) = " + detail::num(observed) + " vs 128/(15 sqrt(pi)) = " + detail::num(expected)};
}

/// Relative energy deviation between r = 1 and r = 0 at the figure's endpoint γ = 4e-3.
inline double fig1_endpoint_deviation(const std::vector<EosReport> &rows)
{
    double e0 = 0.0;
    double e1 = 0.0;
    for (const auto &row : rows) {
        if (row.gamma == 4e-3 && row.r == 0.0) {
            e0 = row.energy_ratio;
        }
        if (row.gamma == 4e-3 && row.r == 1.0) {
            e1 = row.energy_ratio;
        }
    }
    if (e0 == 0.0 || e1 == 0.0) {
        throw error("figure grid lacks the gamma = 4e-3 endpoint");
    }
    return e1 / e0 - 1.0;
}

inline CheckResult fig1_check()
{
    const double dev = fig1_endpoint_deviation(sweep(fig1_spec()));
    return {"fig1-deviation", dev > 0.08 && dev < 0.09,
            "E(r=1)/E(r=0) - 1 at gamma=4e-3 = " + detail::num(dev) + " (need in (0.08, 0.09))"};
}

/// Largest relative mismatch between the SI formulas and the dimensionless ratios.
inline double si_round_trip_error(double gamma, double r)
{
    const auto params = GasParamsSI::from_state(constants::lithium7_mass, benchmark_a_s, gamma, r);
    const StatePoint point = reduce(params);
    const double u = solve_exact(kappa_of(point));
    const double M = m_dimensionful(u, params);
    const auto direct = si::evaluate(M, params);
    const auto scales = energy_scales(params);
    const double rho = params.density_per_m3;
    const double e0 = scales.mean_field_energy_density(rho);
    const double errs[] = {
        detail::relative(depletion_fraction(point, u) * rho, direct.depletion),
        detail::relative(mu_ratio(point, u) * scales.g_rho, direct.mu),
        detail::relative(pressure_ratio(point, u) * e0, direct.pressure),
        detail::relative(energy_ratio(point, u) * e0, direct.energy),
    };
    return *std::max_element(std::begin(errs), std::end(errs));
}

inline CheckResult si_round_trip_check()
{
    const double worst = std::max(si_round_trip_error(4e-3, 0.0), si_round_trip_error(4e-3, 1.0));
    return {"si-round-trip", worst <= 1e-12, "max relative mismatch " + detail::num(worst) + " (limit 1e-12)"};
}

inline CheckResult thermal_check()
{
    const StatePoint point(4e-3, 0.0);
    const auto zero = quad::thermal_parts(point, 0.0);
    bool ok = zero.delta_i11 == 0.0 && zero.delta_i22 == 0.0;
    double prev = 0.0;
    std::string text = "tau=0 -> (" + detail::num(zero.delta_i11) + ", " + detail::num(zero.delta_i22) + ")";
    for (int k = 1; k <= 10; ++k) {
        const double di11 = quad::thermal_parts(point, 0.01 * k).delta_i11;
        if (!(di11 > prev)) {
            ok = false;
            text += "; not increasing at tau=" + detail::num(0.01 * k);
        }
        prev = di11;
    }
    return {"thermal-limits", ok, text};
}

inline std::vector<CheckResult> run_all(const ValidateOptions &opts = {})
{
    std::vector<CheckResult> out = coefficient_checks(opts.drop_m2);
    out.push_back(legendre_series_check(opts.drop_m2));
    out.push_back(legendre_numeric_check(opts.seed));
    out.push_back(sound_fd_check());
    for (auto &c : quadrature_checks()) {
        out.push_back(std::move(c));
    }
    out.push_back(gap_closure_check(opts.seed, opts.kappa_scale));
    out.push_back(perturbation_order_check());
    out.push_back(lhy_limit_check());
    out.push_back(fig1_check());
    out.push_back(si_round_trip_check());
    out.push_back(thermal_check());
    return out;
}

inline bool all_passed(const std::vector<CheckResult> &results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult &c) { return c.passed; });
}

} // namespace bose_eos::validation

#endif // BOSE_EOS_VALIDATE_HPP
