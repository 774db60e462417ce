#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <bose_eos/gap_solver.hpp>
#include <bose_eos/si_direct.hpp>

using namespace bose_eos;

namespace
{
constexpr double li7_mass = 1.165e-26;
constexpr double li7_a = 1.59e-7;

/// Plain bisection on u² + κu³ − 1 over [0, 1]; independent of the Newton path.
double bisection_root(double kappa)
{
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * mid + kappa * mid * mid * mid - 1.0 < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Closed form of M/√(2gρ) in the SI couplings.
double closed_gap_form(const GasParamsSI &p)
{
    const double gamma = p.density_per_m3 * std::pow(p.a_s_m, 3);
    const double range = 1.0 + 8.0 * std::numbers::pi * p.density_per_m3 * p.a_s_m * p.a_s_m * p.r_s_m;
    const double root_pi = std::sqrt(std::numbers::pi);
    const double a = 16.0 * std::sqrt(gamma) / (3.0 * root_pi * range * range);
    const double b = 40.0 * std::sqrt(gamma) / (3.0 * root_pi * range * range);
    return 1.0 - a * (1.0 - b);
}
} // namespace

TEST(Kappa, Values)
{
    EXPECT_NEAR(kappa_of(StatePoint(4e-3, 0.0)), 0.380613, 5e-7);
    EXPECT_NEAR(kappa_of(StatePoint(4e-3, 1.0)), 0.314253, 5e-7);
    EXPECT_LT(kappa_of(StatePoint(1e-20, 0.0)), 1e-9);
    const StatePoint p(4e-3, 1.0);
    EXPECT_NEAR(kappa_of(p), kappa_of(StatePoint(4e-3, 0.0)) * p.s() * p.s(), 1e-15);
}

TEST(SolveExact, KnownRoots)
{
    EXPECT_EQ(solve_exact(0.0), 1.0);
    EXPECT_NEAR(solve_exact(1.0), bisection_root(1.0), 1e-14);
    EXPECT_NEAR(solve_exact(1.0), 0.754878, 5e-7);
    EXPECT_NEAR(solve_exact(1e-6), 1.0 - 5e-7, 1e-12);
}

TEST(SolveExact, ResidualAndBracketOnGrid)
{
    for (double kappa = 1e-8; kappa < 1e4; kappa *= 1.7) {
        const auto root = solve_exact_detailed(kappa);
        EXPECT_GT(root.u, 0.0);
        EXPECT_LE(root.u, 1.0);
        EXPECT_LE(std::abs(root.u * root.u + kappa * std::pow(root.u, 3) - 1.0), 1e-14) << kappa;
        EXPECT_LE(root.iterations, 100);
        EXPECT_NEAR(root.u, bisection_root(kappa), 1e-14 + 1e-13 * root.u);
    }
}

TEST(SolveExact, StrictlyDecreasingInKappa)
{
    double prev = solve_exact(0.0);
    for (double kappa = 1e-4; kappa < 100.0; kappa *= 1.3) {
        const double u = solve_exact(kappa);
        EXPECT_LT(u, prev);
        prev = u;
    }
}

TEST(SolveExact, RejectsNegativeKappa)
{
    EXPECT_THROW(solve_exact(-1e-3), domain_error);
    EXPECT_THROW(solve_exact(std::nan("")), domain_error);
}

TEST(SolvePerturbative, Polynomial)
{
    EXPECT_EQ(solve_perturbative(0.0), 1.0);
    EXPECT_DOUBLE_EQ(solve_perturbative(0.1), 0.95625);
    EXPECT_DOUBLE_EQ(solve_perturbative(0.1, true), 0.95);
}

TEST(SolvePerturbative, MatchesClosedForm)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> log_gamma(std::log(1e-8), std::log(4e-3));
    std::uniform_real_distribution<double> range(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto params = GasParamsSI::from_state(li7_mass, li7_a, std::exp(log_gamma(rng)), range(rng));
        const double u = solve_perturbative(kappa_of(reduce(params)));
        EXPECT_NEAR(u, closed_gap_form(params), 1e-14);
    }
    const auto contact = GasParamsSI::from_state(li7_mass, li7_a, 4e-3, 0.0);
    EXPECT_NEAR(solve_perturbative(kappa_of(reduce(contact))), closed_gap_form(contact), 1e-15);
}

TEST(SolvePerturbative, ThirdOrderAgreement)
{
    // |u_exact − u_pert| and the residual of u_pert both scale as κ³.
    for (double kappa : {1e-4, 1e-3, 1e-2}) {
        const double ue = solve_exact(kappa);
        const double up = solve_perturbative(kappa);
        EXPECT_LT(std::abs(ue - up), 2.0 * kappa * kappa * kappa);
        EXPECT_GT(std::abs(ue - up), 0.1 * kappa * kappa * kappa);
        const double res = up * up + kappa * up * up * up - 1.0;
        EXPECT_LT(std::abs(res), 4.0 * kappa * kappa * kappa);
    }
}

TEST(Solve, PopulatesGapSolution)
{
    const auto sol = solve(StatePoint(4e-3, 1.0));
    EXPECT_NEAR(sol.kappa, 0.314253, 5e-7);
    EXPECT_LE(sol.residual, 1e-14);
    EXPECT_GT(sol.u_exact, 0.0);
    EXPECT_LE(sol.u_exact, 1.0);
    EXPECT_EQ(sol.u_pert, 1.0 - sol.kappa / 2.0 + 0.625 * sol.kappa * sol.kappa);
    const auto dropped = solve(StatePoint(4e-3, 1.0), true);
    EXPECT_EQ(dropped.u_pert, 1.0 - dropped.kappa / 2.0);
    EXPECT_EQ(dropped.u_exact, sol.u_exact);
}

TEST(MDimensionful, ScalesWithDensity)
{
    const auto params = GasParamsSI::from_state(li7_mass, li7_a, 1e-3, 0.5);
    EXPECT_DOUBLE_EQ(m_dimensionful(1.0, params), std::sqrt(2.0 * coupling_g(params) * params.density_per_m3));
    GasParamsSI denser = params;
    denser.density_per_m3 *= 4.0;
    EXPECT_NEAR(m_dimensionful(0.9, denser) / m_dimensionful(0.9, params), 2.0, 1e-15);
    EXPECT_THROW(m_dimensionful(0.0, params), domain_error);
}

TEST(MDimensionful, MatchesNewtonSolveInSi)
{
    for (double r : {0.0, 1.0, -0.8}) {
        const auto params = GasParamsSI::from_state(li7_mass, li7_a, 4e-3, r);
        // Newton directly on the dimensionful gap equation, derivative by central difference.
        double M = std::sqrt(2.0 * coupling_g(params) * params.density_per_m3);
        for (int i = 0; i < 60; ++i) {
            const double h = 1e-6 * M;
            const double f = si::gap_residual(M, params);
            const double df = (si::gap_residual(M + h, params) - si::gap_residual(M - h, params)) / (2.0 * h);
            M -= f / df;
        }
        const double u = solve_exact(kappa_of(reduce(params)));
        EXPECT_NEAR(m_dimensionful(u, params) / M, 1.0, 1e-13) << "r=" << r;
    }
}
