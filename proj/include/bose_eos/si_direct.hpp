#ifndef BOSE_EOS_SI_DIRECT_HPP
#define BOSE_EOS_SI_DIRECT_HPP

#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "units.hpp"

// The dimensionful formulas evaluated literally in SI. m* comes from the
// couplings (1 + 4mλρ/ħ²), not from StatePoint, so these functions form an
// independent route to the dimensionless ratios in eos.hpp.

namespace bose_eos::si
{

struct DirectValues {
    double depletion = 0.0; // ρ_ex [1/m³]
    double mu = 0.0;        // [J]
    double pressure = 0.0;  // [J/m³]
    double energy = 0.0;    // [J/m³]
};

namespace detail
{
inline double hbar3() { return constants::hbar * constants::hbar * constants::hbar; }
inline double pi2() { return std::numbers::pi * std::numbers::pi; }
} // namespace detail

/// (2m*)^{3/2} M³ / ħ³ √(m*/m) with m* from the couplings.
inline double loop_factor(double M, const GasParamsSI &params)
{
    const double s = mass_ratio_si(params);
    const double mstar = params.mass_kg * s;
    return std::pow(2.0 * mstar, 1.5) * M * M * M / detail::hbar3() * std::sqrt(s);
}

/// M² − 2gρ + (2m*)^{3/2} g √(m*/m) M³/(3π²ħ³); zero on the gap solution.
inline double gap_residual(double M, const GasParamsSI &params)
{
    const double g = coupling_g(params);
    return M * M - 2.0 * g * params.density_per_m3 + loop_factor(M, params) * g / (3.0 * detail::pi2());
}

inline DirectValues evaluate(double M, const GasParamsSI &params)
{
    const double s = mass_ratio_si(params);
    const double mstar = params.mass_kg * s;
    const double g = coupling_g(params);
    const double rho = params.density_per_m3;
    const double base = std::pow(2.0 * mstar, 1.5) * M * M * M / detail::hbar3();
    const double loop = base * std::sqrt(s);

    DirectValues v;
    v.depletion = base / (24.0 * detail::pi2()) * (2.0 * std::sqrt(s) - 1.0 / std::sqrt(s));
    v.mu = g * rho + loop * g / (6.0 * detail::pi2());
    const double bracket = 1.0 + loop / (3.0 * detail::pi2() * rho)
                           - loop * M * M / (15.0 * detail::pi2() * g * rho * rho)
                           + 2.0 * mstar * mstar * mstar * std::pow(M, 6) * std::sqrt(s)
                                 / (9.0 * detail::pi2() * detail::pi2() * detail::hbar3() * detail::hbar3()
                                    * rho * rho);
    v.pressure = 0.5 * g * rho * rho * bracket;
    v.energy = -v.pressure + v.mu * rho;
    return v;
}

} // namespace bose_eos::si

#endif // BOSE_EOS_SI_DIRECT_HPP
