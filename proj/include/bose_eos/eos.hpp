#ifndef BOSE_EOS_EOS_HPP
#define BOSE_EOS_EOS_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "gap_solver.hpp"
#include "units.hpp"

// Zero-temperature thermodynamics as dimensionless ratios of (γ, r, u):
//   depletion  ρ_ex/ρ
//   mu         μ/(gρ)
//   pressure   P/(gρ²/2)
//   energy     E/(gρ²/2) = 2μ/(gρ) − P/(gρ²/2)
//   sound      c/√(gρ/m)

namespace bose_eos
{

enum class Mode { exact, perturbative, series };

inline std::string_view to_string(Mode mode)
{
    switch (mode) {
        case Mode::exact:
            return "exact";
        case Mode::perturbative:
            return "perturbative";
        case Mode::series:
            return "series";
    }
    return "unknown";
}

inline Mode mode_from_string(std::string_view name)
{
    if (name == "exact") {
        return Mode::exact;
    }
    if (name == "perturbative") {
        return Mode::perturbative;
    }
    if (name == "series") {
        return Mode::series;
    }
    throw domain_error("unknown mode: " + std::string(name));
}

inline double depletion_fraction(const StatePoint &point, double u)
{
    const double s = point.s();
    const double rs = std::sqrt(s);
    const double bracket = 2.0 * rs - 1.0 / rs;
    return lhy_constant / 4.0 * point.sqrt_gamma() * s * rs * u * u * u * bracket;
}

/// Set when the depletion bracket 2√s − 1/√s is negative (t ≥ 1).
inline bool depletion_negative(const StatePoint &point)
{
    return point.t() >= 1.0;
}

inline double mu_ratio(const StatePoint &point, double u)
{
    const double s = point.s();
    return 1.0 + lhy_constant * point.sqrt_gamma() * s * s * u * u * u;
}

inline double pressure_ratio(const StatePoint &point, double u)
{
    const double s = point.s();
    const double sg = point.sqrt_gamma();
    const double u3 = u * u * u;
    const double s2 = s * s;
    const double s72 = s2 * s * std::sqrt(s);
    return 1.0 + 2.0 * lhy_constant * sg * s2 * u3
           - 0.8 * lhy_constant * sg * s2 * u3 * u * u
           + lhy_constant * lhy_constant * point.gamma() * s72 * u3 * u3;
}

inline double energy_ratio(const StatePoint &point, double u)
{
    return 2.0 * mu_ratio(point, u) - pressure_ratio(point, u);
}

/// c/√(gρ/m) from μ(γ) at fixed r: c² m/(gρ) = S + γ dS/dγ with S = μ/(gρ).
/// `du_dkappa` is the slope of the u(κ) branch the caller evaluates μ with.
inline double sound_ratio(const StatePoint &point, double u, double du_dkappa)
{
    const double sg = point.sqrt_gamma();
    const double s = point.s();
    const double ds_dgamma = -8.0 * std::numbers::pi * point.r() * s * s;
    // κ = C √γ s²;  γ dκ/dγ = κ/2 + 2κ γ s'/s
    const double kappa = lhy_constant * sg * s * s;
    const double gamma_dkappa = kappa * (0.5 + 2.0 * point.gamma() * ds_dgamma / s);
    const double gamma_du = du_dkappa * gamma_dkappa;
    // S − 1 = C √γ s² u³
    const double core = lhy_constant * sg * s * s * u * u * u;
    const double gamma_dcore = core * (0.5 + 2.0 * point.gamma() * ds_dgamma / s + 3.0 * gamma_du / u);
    const double c2 = 1.0 + core + gamma_dcore;
    if (!(c2 > 0.0)) {
        throw non_positive_compressibility("d mu / d rho <= 0");
    }
    return std::sqrt(c2);
}

/// du/dκ along the exact root of u² + κu³ = 1.
inline double du_dkappa_exact(double kappa, double u)
{
    return -u * u / (2.0 + 3.0 * kappa * u);
}

inline double du_dkappa_perturbative(double kappa, bool drop_m2 = false)
{
    return drop_m2 ? -0.5 : -0.5 + 1.25 * kappa;
}

/// μ in joules with the exact root, m* and κ rebuilt from SI inputs.
inline double chemical_potential_si(const GasParamsSI &params)
{
    const StatePoint point = reduce(params);
    const double u = solve_exact(kappa_of(point));
    return coupling_g(params) * params.density_per_m3 * mu_ratio(point, u);
}

/// Sound speed ratio from a central finite difference of μ(ρ) at fixed a_s, r_s,
/// Richardson-extrapolated over the steps h and h/2.
inline double sound_ratio_numeric(const GasParamsSI &params, double h = 1e-5)
{
    params.validate();
    if (!(h >= 1e-7 && h <= 1e-3)) {
        throw domain_error("relative step must lie in [1e-7, 1e-3]");
    }
    const double rho = params.density_per_m3;
    auto mu_at = [&](double density) {
        GasParamsSI shifted = params;
        shifted.density_per_m3 = density;
        return chemical_potential_si(shifted);
    };
    auto central = [&](double step) {
        const double d = step * rho;
        return (mu_at(rho + d) - mu_at(rho - d)) / (2.0 * d);
    };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    const double dmu_drho = (4.0 * fine - coarse) / 3.0;
    if (!(dmu_drho > 0.0)) {
        throw non_positive_compressibility("d mu / d rho <= 0");
    }
    // c² = (ρ/m) dμ/dρ, c0² = gρ/m
    return std::sqrt(dmu_drho / coupling_g(params));
}

/// One point of the gapless spectrum E(k) = √(ε_k(ε*_k + M²)).
///
/// Convention: x² = ε_k/M² with the bare kinetic energy, so ε*_k/M² = x²/s and
/// E/M² = x √(x²/s + 1). E/M² → x for x → 0 (phonons) and → x²/√s for x → ∞.
struct DispersionSample {
    double x = 0.0;
    double e_over_M2 = 0.0;
};

inline DispersionSample dispersion(const StatePoint &point, double x)
{
    if (!(x >= 0.0)) {
        throw domain_error("wavenumber must be non-negative");
    }
    return {x, x * std::sqrt(x * x / point.s() + 1.0)};
}

} // namespace bose_eos

#endif // BOSE_EOS_EOS_HPP
