#ifndef BOSE_EOS_UNITS_HPP
#define BOSE_EOS_UNITS_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bose_eos
{

// CODATA 2018 (exact in the revised SI).
namespace constants
{
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K
inline constexpr double lithium7_mass = 1.16503e-26; // kg, 7.016 u
} // namespace constants

/// Dimensional inputs of a homogeneous gas. Everything in SI.
struct GasParamsSI {
    double mass_kg = 0.0;
    double a_s_m = 0.0;
    double r_s_m = 0.0; // any sign
    double density_per_m3 = 0.0;

    void validate() const
    {
        if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
            throw domain_error("atomic mass must be positive and finite");
        }
        if (!(a_s_m > 0.0) || !std::isfinite(a_s_m)) {
            throw domain_error("scattering length must be positive and finite");
        }
        if (!std::isfinite(r_s_m)) {
            throw domain_error("effective range must be finite");
        }
        if (!(density_per_m3 > 0.0) || !std::isfinite(density_per_m3)) {
            throw domain_error("density must be positive and finite");
        }
    }

    [[nodiscard]] double gas_parameter() const
    {
        return density_per_m3 * a_s_m * a_s_m * a_s_m;
    }

    /// Parameters at gas parameter `gamma` and range ratio `r` for a given mass and a_s.
    static GasParamsSI from_state(double mass_kg, double a_s_m, double gamma, double r)
    {
        return GasParamsSI{mass_kg, a_s_m, r * a_s_m, gamma / (a_s_m * a_s_m * a_s_m)};
    }
};

/// Dimensionless state: gas parameter γ and range ratio r = r_s/a_s.
///
/// t = 8πγr is the finite-range shift of the inverse mass, s = m*/m = 1/(1+t).
/// Construction rejects t ≤ −1, where the modified mass stops being positive.
class StatePoint
{
public:
    StatePoint(double gamma, double r) : gamma_(gamma), r_(r)
    {
        if (!(gamma > 0.0) || !std::isfinite(gamma)) {
            throw domain_error("gas parameter must be positive and finite");
        }
        if (!std::isfinite(r)) {
            throw domain_error("range ratio must be finite");
        }
        t_ = 8.0 * std::numbers::pi * gamma * r;
        if (!(1.0 + t_ > 0.0)) {
            throw domain_error("1 + 8*pi*gamma*r <= 0: modified mass is not positive");
        }
        s_ = 1.0 / (1.0 + t_);
    }

    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] double sqrt_gamma() const noexcept { return std::sqrt(gamma_); }

private:
    double gamma_;
    double r_;
    double t_ = 0.0;
    double s_ = 1.0;
};

inline StatePoint reduce(const GasParamsSI &params)
{
    params.validate();
    return StatePoint(params.gas_parameter(), params.r_s_m / params.a_s_m);
}

/// Contact coupling in first Born approximation, g = 4πħ²a_s/m [J m³].
inline double coupling_g(const GasParamsSI &params)
{
    params.validate();
    return 4.0 * std::numbers::pi * constants::hbar * constants::hbar * params.a_s_m / params.mass_kg;
}

/// Finite-range coupling λ = 2πħ²a_s²r_s/m [J m⁵]; carries the sign of r_s.
inline double coupling_lambda(const GasParamsSI &params)
{
    params.validate();
    return 2.0 * std::numbers::pi * constants::hbar * constants::hbar * params.a_s_m * params.a_s_m
           * params.r_s_m / params.mass_kg;
}

/// m*/m = 1/(1 + 4mλρ/ħ²), evaluated directly from SI couplings.
inline double mass_ratio_si(const GasParamsSI &params)
{
    const double lambda = coupling_lambda(params);
    const double denom = 1.0
                         + 4.0 * params.mass_kg * lambda * params.density_per_m3
                               / (constants::hbar * constants::hbar);
    if (!(denom > 0.0)) {
        throw domain_error("modified mass is not positive");
    }
    return 1.0 / denom;
}

/// Scales that turn dimensionless ratios back into SI quantities.
struct EnergyScales {
    double g_rho = 0.0;       // gρ [J]: unit of μ
    double sqrt_2g_rho = 0.0; // √(2gρ) [J^½]: unit of M
    double c0 = 0.0;          // √(gρ/m) [m/s]: unit of the sound speed

    /// gρ²/2 [J/m³]: unit of pressure and energy density.
    [[nodiscard]] double mean_field_energy_density(double density) const
    {
        return 0.5 * g_rho * density;
    }
};

inline EnergyScales energy_scales(const GasParamsSI &params)
{
    const double g_rho = coupling_g(params) * params.density_per_m3;
    return EnergyScales{g_rho, std::sqrt(2.0 * g_rho), std::sqrt(g_rho / params.mass_kg)};
}

/// Non-fatal warnings about leaving the dilute, weak-range regime.
inline std::vector<std::string> validity_flags(const StatePoint &point)
{
    std::vector<std::string> flags;
    if (point.sqrt_gamma() > 0.1) {
        flags.emplace_back("weak_coupling_gamma");
    }
    if (std::abs(point.t()) > 0.5) {
        flags.emplace_back("weak_coupling_range");
    }
    return flags;
}

} // namespace bose_eos

#endif // BOSE_EOS_UNITS_HPP
