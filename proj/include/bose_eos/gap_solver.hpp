#ifndef BOSE_EOS_GAP_SOLVER_HPP
#define BOSE_EOS_GAP_SOLVER_HPP

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "units.hpp"

// Self-consistent gap parameter M.
//
// With M = √(2gρ)·u and g = 4πħ²a_s/m the gap equation
//     M² = 2gρ − (2m*)^{3/2} g √(m*/m) M³ / (3π²ħ³)
// becomes u² + κu³ = 1, κ = 32√γ / (3√π (1+8πγr)²).

namespace bose_eos
{

/// 32/(3√π), the LHY-scale constant that recurs in every ratio.
inline constexpr double lhy_constant = 32.0 / (3.0 * 1.7724538509055160273);

inline double kappa_of(const StatePoint &point)
{
    const double s = point.s();
    return lhy_constant * point.sqrt_gamma() * s * s;
}

struct GapSolution {
    double kappa = 0.0;
    double u_exact = 1.0;
    double u_pert = 1.0;
    double residual = 0.0; // |u² + κu³ − 1| at u_exact
    int iterations = 0;
};

namespace detail
{
inline double gap_residual(double u, double kappa)
{
    return u * u * (1.0 + kappa * u) - 1.0;
}
} // namespace detail

struct RootResult {
    double u = 1.0;
    int iterations = 0;
};

/// Positive root of u² + κu³ − 1 by Newton's method safeguarded with bisection on [0, 1].
inline RootResult solve_exact_detailed(double kappa)
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw domain_error("kappa must be non-negative and finite");
    }
    if (kappa == 0.0) {
        return {1.0, 0};
    }
    constexpr int max_iterations = 100;
    constexpr double tolerance = 1e-14;

    double lo = 0.0;
    double hi = 1.0;
    // Start from the perturbative root when it is inside the bracket.
    double u = 1.0 - 0.5 * kappa + 0.625 * kappa * kappa;
    if (!(u > lo && u < hi)) {
        u = 0.5 * (lo + hi);
    }
    for (int it = 1; it <= max_iterations; ++it) {
        const double f = detail::gap_residual(u, kappa);
        if (f < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        const double df = u * (2.0 + 3.0 * kappa * u);
        double next = u - f / df;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - u);
        u = next;
        if (step <= tolerance * u || hi - lo <= tolerance) {
            // One more Newton polish keeps |f| at rounding level.
            const double fu = detail::gap_residual(u, kappa);
            const double polished = u - fu / (u * (2.0 + 3.0 * kappa * u));
            if (std::abs(detail::gap_residual(polished, kappa)) < std::abs(fu)) {
                u = polished;
            }
            return {u, it};
        }
    }
    throw convergence_error("gap equation solver exhausted its iteration budget");
}

inline double solve_exact(double kappa)
{
    return solve_exact_detailed(kappa).u;
}

/// Second-order perturbative root 1 − κ/2 + 5κ²/8. With `drop_m2` the κ² term
/// (the second-order correction M₂) is omitted.
inline double solve_perturbative(double kappa, bool drop_m2 = false)
{
    if (!(kappa >= 0.0)) {
        throw domain_error("kappa must be non-negative");
    }
    const double first = 1.0 - 0.5 * kappa;
    return drop_m2 ? first : first + 0.625 * kappa * kappa;
}

inline GapSolution solve(const StatePoint &point, bool drop_m2 = false)
{
    GapSolution sol;
    sol.kappa = kappa_of(point);
    const auto root = solve_exact_detailed(sol.kappa);
    sol.u_exact = root.u;
    sol.iterations = root.iterations;
    sol.u_pert = solve_perturbative(sol.kappa, drop_m2);
    sol.residual = std::abs(detail::gap_residual(sol.u_exact, sol.kappa));
    return sol;
}

/// M = √(2gρ)·u in J^½.
inline double m_dimensionful(double u, const GasParamsSI &params)
{
    if (!(u > 0.0)) {
        throw domain_error("u must be positive");
    }
    return energy_scales(params).sqrt_2g_rho * u;
}

} // namespace bose_eos

#endif // BOSE_EOS_GAP_SOLVER_HPP
