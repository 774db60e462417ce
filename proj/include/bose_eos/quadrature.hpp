#ifndef BOSE_EOS_QUADRATURE_HPP
#define BOSE_EOS_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "units.hpp"

// Zero-temperature momentum integrals in the variable x² = ε*_k/M².
//
// With this substitution both integrands lose their m*/m dependence:
//   P11 = (2m*)^{3/2} M³ √s / (4π²ħ³) · I11,   I11 = ∫ x³/√(x²+1) dx
//   P22 = (2m*)^{3/2} M³ / (4π²ħ³ √s) · I22,   I22 = ∫ x √(x²+1) dx
// Both are power divergent. Removing the pure powers of the cutoff (x² and x⁰
// in the integrand) leaves I11 = 2/3 and I22 = −1/3.

namespace bose_eos::quad
{

struct RegularizedIntegral {
    double raw_value = 0.0;                    // subtracted integral over (0, ∞)
    std::vector<std::string> subtracted_terms; // monomials removed from the integrand
    double closed_form = 0.0;
    double error_estimate = 0.0;
};

struct QuadratureOptions {
    double split_point = 50.0; // numerical on (0, X), asymptotic series on (X, ∞)
    double tolerance = 1e-12;
    double max_error = 1e-10;
};

namespace detail
{
/// x³/√(x²+1) − x² + 1/2
inline double p11_subtracted_integrand(double x)
{
    const double w = std::sqrt(x * x + 1.0);
    return 0.5 - x * x / (w * (x + w));
}

/// x√(x²+1) − x² − 1/2
inline double p22_subtracted_integrand(double x)
{
    const double w = std::sqrt(x * x + 1.0);
    return x / (w + x) - 0.5;
}

// ∫_X^∞ of the integrands' large-x expansions, through x⁻⁶.
inline double p11_tail(double X)
{
    return 3.0 / (8.0 * X) - 5.0 / (48.0 * X * X * X) + 35.0 / (640.0 * std::pow(X, 5));
}

inline double p22_tail(double X)
{
    return -1.0 / (8.0 * X) + 1.0 / (48.0 * X * X * X) - 1.0 / (128.0 * std::pow(X, 5));
}

template <typename F>
std::pair<double, double> integrate(F f, double a, double b, const QuadratureOptions &opts)
{
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 15, opts.tolerance, &error);
    if (!std::isfinite(value) || error > opts.max_error) {
        throw quadrature_failure("quadrature error estimate " + std::to_string(error)
                                 + " exceeds " + std::to_string(opts.max_error));
    }
    return {value, error};
}

template <typename F>
RegularizedIntegral regularized(F integrand, double (*tail)(double), double closed_form,
                                const QuadratureOptions &opts)
{
    if (!(opts.split_point > 1.0)) {
        throw domain_error("split point must exceed 1");
    }
    // Panels with distinct scales; summed in a fixed order.
    const double X = opts.split_point;
    const double edges[] = {0.0, 1.0, 4.0, X};
    double value = 0.0;
    double error = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto [v, e] = integrate(integrand, edges[i], edges[i + 1], opts);
        value += v;
        error += e;
    }
    return {value + tail(X), {"x^2", "x^0"}, closed_form, error};
}
} // namespace detail

/// ∫₀^∞ [x³/√(x²+1) − x² + 1/2] dx
inline RegularizedIntegral p11_T0_dimensionless(const QuadratureOptions &opts = {})
{
    return detail::regularized(detail::p11_subtracted_integrand, detail::p11_tail, 2.0 / 3.0, opts);
}

/// ∫₀^∞ [x√(x²+1) − x² − 1/2] dx
inline RegularizedIntegral p22_T0_dimensionless(const QuadratureOptions &opts = {})
{
    return detail::regularized(detail::p22_subtracted_integrand, detail::p22_tail, -1.0 / 3.0, opts);
}

/// Analytic continuation of ∫₀^∞ x^a (x²+1)^b dx = Γ((a+1)/2) Γ(−b−(a+1)/2) / (2Γ(−b)).
inline double beta_continuation(double a, double b)
{
    const double h = 0.5 * (a + 1.0);
    return std::tgamma(h) * std::tgamma(-b - h) / (2.0 * std::tgamma(-b));
}

/// (2m*)^{3/2} M³ / (4π²ħ³)
inline double momentum_prefactor(double s, double M, const GasParamsSI &params)
{
    const double two_mstar = 2.0 * params.mass_kg * s;
    const double hbar3 = constants::hbar * constants::hbar * constants::hbar;
    return std::pow(two_mstar, 1.5) * M * M * M / (4.0 * std::numbers::pi * std::numbers::pi * hbar3);
}

/// P11 = (2m*)^{3/2} M³ √(m*/m) / (6π²ħ³)  [1/m³]
inline double closed_form_P11(const StatePoint &point, double M, const GasParamsSI &params)
{
    const double s = point.s();
    return momentum_prefactor(s, M, params) * std::sqrt(s) * (2.0 / 3.0);
}

/// P22 = −(2m*)^{3/2} M³ √(m/m*) / (12π²ħ³)  [1/m³]
inline double closed_form_P22(const StatePoint &point, double M, const GasParamsSI &params)
{
    const double s = point.s();
    return momentum_prefactor(s, M, params) / std::sqrt(s) * (-1.0 / 3.0);
}

/// Bose-occupation parts of I11 and I22 at temperature tau = k_B T / M²,
/// where βE = √s x √(x²+1) / tau. Both integrands are non-negative.
struct ThermalParts {
    double delta_i11 = 0.0;
    double delta_i22 = 0.0;
};

inline ThermalParts thermal_parts(const StatePoint &point, double tau, const QuadratureOptions &opts = {})
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw domain_error("temperature must be non-negative and finite");
    }
    if (tau == 0.0) {
        return {};
    }
    const double rs = std::sqrt(point.s());
    // 2/(e^{βE} − 1) times the zero-temperature weights; βE ~ √s x/tau near 0.
    auto occupation = [rs, tau](double x) {
        const double beta_e = rs * x * std::sqrt(x * x + 1.0) / tau;
        return 2.0 / std::expm1(beta_e);
    };
    auto f11 = [&](double x) {
        if (x == 0.0) {
            return 0.0;
        }
        return x * x * x / std::sqrt(x * x + 1.0) * occupation(x);
    };
    auto f22 = [&](double x) {
        if (x == 0.0) {
            return 2.0 * tau / rs;
        }
        return x * std::sqrt(x * x + 1.0) * occupation(x);
    };
    // The occupation is below e^{−700} once βE ≥ 700; βE ≥ √s max(x, x²)/tau.
    const double v = 700.0 * tau / rs;
    const double upper = 1.1 * std::min(v, std::sqrt(v));
    const double edges[] = {0.0, std::min(1.0, upper), upper};
    ThermalParts out;
    for (int i = 0; i < 2; ++i) {
        if (edges[i + 1] > edges[i]) {
            out.delta_i11 += detail::integrate(f11, edges[i], edges[i + 1], opts).first;
            out.delta_i22 += detail::integrate(f22, edges[i], edges[i + 1], opts).first;
        }
    }
    return out;
}

} // namespace bose_eos::quad

#endif // BOSE_EOS_QUADRATURE_HPP
