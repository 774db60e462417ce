#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <bose_eos/eos.hpp>
#include <bose_eos/report.hpp>
#include <bose_eos/series.hpp>

using namespace bose_eos;

namespace
{
constexpr double li7_mass = 1.165e-26;
constexpr double li7_a = 1.59e-7;
const double root_pi = std::sqrt(std::numbers::pi);

double u_exact(const StatePoint &p) { return solve_exact(kappa_of(p)); }

double slope(const std::vector<double> &x, const std::vector<double> &y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += std::log(x[i]);
        sy += std::log(y[i]);
        sxx += std::log(x[i]) * std::log(x[i]);
        sxy += std::log(x[i]) * std::log(y[i]);
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Universal (r = 0) formulas written out separately: m* = m everywhere.
struct Universal {
    double depletion, mu, pressure;
};

Universal universal(double gamma)
{
    const double c = 32.0 / (3.0 * root_pi);
    const double kappa = c * std::sqrt(gamma);
    double u = 1.0;
    for (int i = 0; i < 200; ++i) {
        u -= (u * u + kappa * u * u * u - 1.0) / (2.0 * u + 3.0 * kappa * u * u);
    }
    const double u3 = u * u * u;
    return {8.0 / (3.0 * root_pi) * std::sqrt(gamma) * u3, 1.0 + c * std::sqrt(gamma) * u3,
            1.0 + 64.0 / (3.0 * root_pi) * std::sqrt(gamma) * u3
                - 128.0 / (15.0 * root_pi) * std::sqrt(gamma) * u3 * u * u
                + 1024.0 / (9.0 * std::numbers::pi) * gamma * u3 * u3};
}
} // namespace

TEST(Depletion, LeadingCoefficient)
{
    const double gamma = 1e-12;
    const StatePoint p(gamma, 0.0);
    EXPECT_NEAR(depletion_fraction(p, u_exact(p)) / std::sqrt(gamma), 8.0 / (3.0 * root_pi), 1e-4);
    EXPECT_LT(depletion_fraction(StatePoint(1e-20, 0.0), 1.0), 1e-9);
}

TEST(Depletion, AgreesWithSeriesAtSmallGamma)
{
    const StatePoint p(1e-6, 0.0);
    const double exact = depletion_fraction(p, u_exact(p));
    const double ser = series::reference_series(series::Quantity::depletion).evaluate(1e-6, 0.0);
    // Dropped terms start at γ² in ρ_ex/ρ.
    EXPECT_LT(std::abs(exact - ser) / exact, 1e-5);
}

TEST(Depletion, NegativeBeyondUnitRangeShift)
{
    const double gamma = 4e-3;
    const double r_unit = 1.0 / (8.0 * std::numbers::pi * gamma); // t = 1
    EXPECT_FALSE(depletion_negative(StatePoint(gamma, 0.9 * r_unit)));
    EXPECT_TRUE(depletion_negative(StatePoint(gamma, 1.5 * r_unit)));
    const StatePoint beyond(gamma, 1.5 * r_unit);
    EXPECT_LT(depletion_fraction(beyond, u_exact(beyond)), 0.0);
    const auto rep = evaluate(beyond);
    EXPECT_NE(std::find(rep.flags.begin(), rep.flags.end(), "depletion_negative"), rep.flags.end());
}

TEST(ChemicalPotential, LimitsAndLeadingCoefficient)
{
    EXPECT_NEAR(mu_ratio(StatePoint(1e-20, 0.0), 1.0), 1.0, 1e-9);
    EXPECT_NEAR(32.0 / (3.0 * root_pi), 6.01802, 5e-6);
    const double gamma = 1e-12;
    const StatePoint p(gamma, 0.0);
    EXPECT_NEAR((mu_ratio(p, u_exact(p)) - 1.0) / std::sqrt(gamma), 32.0 / (3.0 * root_pi), 1e-4);
}

TEST(Pressure, LeadingTermsAtUnitGap)
{
    const double gamma = 1e-14;
    const StatePoint p(gamma, 0.0);
    // u³ and u⁵ terms at u = 1: 64/(3√π) − 128/(15√π) = 64/(5√π)
    EXPECT_NEAR((pressure_ratio(p, 1.0) - 1.0) / std::sqrt(gamma), 64.0 / (5.0 * root_pi), 1e-5);
    EXPECT_NEAR(pressure_ratio(StatePoint(1e-20, 0.3), 1.0), 1.0, 1e-9);
}

TEST(Energy, LegendreIdentityAllModes)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> log_gamma(std::log(1e-8), std::log(4e-3));
    std::uniform_real_distribution<double> range(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const StatePoint p(std::exp(log_gamma(rng)), range(rng));
        for (auto mode : {Mode::exact, Mode::perturbative, Mode::series}) {
            const auto rep = evaluate(p, {mode, false});
            EXPECT_LE(std::abs(rep.energy_ratio + rep.pressure_ratio - 2.0 * rep.mu_ratio) / rep.mu_ratio, 1e-15);
        }
    }
}

TEST(Energy, LhyCoefficientAndRangeDeviation)
{
    const double gamma = 1e-12;
    const StatePoint p(gamma, 0.0);
    EXPECT_NEAR((energy_ratio(p, u_exact(p)) - 1.0) / std::sqrt(gamma) / (128.0 / (15.0 * root_pi)), 1.0, 1e-4);
    EXPECT_NEAR(128.0 / (15.0 * root_pi), 4.81, 5e-3);
    EXPECT_NEAR(energy_ratio(StatePoint(1e-20, 0.0), 1.0), 1.0, 1e-9);

    // The figure's >8% deviation is a property of the truncated series.
    const double e0 = evaluate(StatePoint(4e-3, 0.0), {Mode::series}).energy_ratio;
    const double e1 = evaluate(StatePoint(4e-3, 1.0), {Mode::series}).energy_ratio;
    EXPECT_GT(e1 / e0 - 1.0, 0.08);
}

TEST(Monotonicity, ContactDepletionAndMuIncrease)
{
    double prev_dep = 0.0;
    double prev_mu = 1.0;
    for (double gamma = 1e-8; gamma <= 1e-2; gamma *= 1.25) {
        const StatePoint p(gamma, 0.0);
        const double u = u_exact(p);
        EXPECT_GT(depletion_fraction(p, u), prev_dep);
        EXPECT_GT(mu_ratio(p, u), prev_mu);
        prev_dep = depletion_fraction(p, u);
        prev_mu = mu_ratio(p, u);
    }
}

TEST(ModeAgreement, DifferenceIsThreeHalvesOrder)
{
    std::vector<double> gammas;
    std::vector<double> diffs;
    for (int i = 0; i <= 16; ++i) {
        const double gamma = 1e-8 * std::pow(1e4, i / 16.0);
        const StatePoint p(gamma, 0.5);
        const auto ex = evaluate(p, {Mode::exact});
        const auto pe = evaluate(p, {Mode::perturbative});
        gammas.push_back(gamma);
        diffs.push_back(std::abs(ex.energy_ratio - pe.energy_ratio) / ex.energy_ratio);
    }
    EXPECT_GE(slope(gammas, diffs), 1.4);
}

TEST(ContactLimit, MatchesHandCodedUniversalPath)
{
    for (double gamma : {1e-8, 1e-6, 1e-4, 4e-3}) {
        const StatePoint p(gamma, 0.0);
        const double u = u_exact(p);
        const auto ref = universal(gamma);
        EXPECT_NEAR(depletion_fraction(p, u), ref.depletion, 1e-15);
        EXPECT_NEAR(mu_ratio(p, u), ref.mu, 1e-15);
        EXPECT_NEAR(pressure_ratio(p, u), ref.pressure, 1e-15);
    }
}

TEST(Sound, AnalyticSlopeMatchesFiniteDifference)
{
    for (double r : {0.0, 0.5, -0.7}) {
        for (double gamma : {1e-6, 1e-4, 4e-3}) {
            const auto params = GasParamsSI::from_state(li7_mass, li7_a, gamma, r);
            const double fd = sound_ratio_numeric(params);
            const double analytic = evaluate(StatePoint(gamma, r), {Mode::exact}).sound_ratio;
            EXPECT_NEAR(fd / analytic, 1.0, 1e-9) << gamma << " " << r;
        }
    }
}

TEST(Sound, LhyLimitAndIdealGas)
{
    const double gamma = 1e-12;
    const auto params = GasParamsSI::from_state(li7_mass, li7_a, gamma, 0.0);
    EXPECT_NEAR((sound_ratio_numeric(params) - 1.0) / std::sqrt(gamma), 8.0 / root_pi, 1e-3);
    EXPECT_NEAR(evaluate(StatePoint(1e-20, 0.0)).sound_ratio, 1.0, 1e-9);
}

TEST(Sound, FiniteDifferenceTracksSeries)
{
    const auto &sound = series::cached_expansion(series::Quantity::sound);
    for (double gamma : {1e-8, 1e-7, 1e-6, 1e-5}) {
        const auto params = GasParamsSI::from_state(li7_mass, li7_a, gamma, 0.3);
        const double fd = sound_ratio_numeric(params);
        // Omitted orders: universal γ² (coefficient ~1e4) and r² γ^{5/2}.
        EXPECT_LT(std::abs(fd - sound.evaluate(gamma, 0.3)), 2e4 * gamma * gamma + 1e-10) << gamma;
    }
}

TEST(Sound, ErrorPaths)
{
    const auto params = GasParamsSI::from_state(li7_mass, li7_a, 1e-4, 0.0);
    EXPECT_THROW(sound_ratio_numeric(params, 1e-2), domain_error);
    EXPECT_THROW(sound_ratio_numeric(params, 1e-9), domain_error);
    EXPECT_THROW(sound_ratio(StatePoint(1e-2, 0.0), 1.0, -100.0), non_positive_compressibility);
}

TEST(Dispersion, GaplessAndFreeParticleLimits)
{
    const StatePoint p(4e-3, 1.0);
    EXPECT_EQ(dispersion(p, 0.0).e_over_M2, 0.0);
    EXPECT_NEAR(dispersion(p, 1e-8).e_over_M2 / 1e-8, 1.0, 1e-12);
    // Quadratic at large x: E/M² → x²/√s.
    const double x = 1e6;
    EXPECT_NEAR(dispersion(p, x).e_over_M2 / (x * x / std::sqrt(p.s())), 1.0, 1e-9);
    const double e1 = dispersion(p, 1e4).e_over_M2;
    const double e2 = dispersion(p, 2e4).e_over_M2;
    EXPECT_NEAR(std::log2(e2 / e1), 2.0, 1e-6);
    EXPECT_THROW(dispersion(p, -1.0), domain_error);
}

TEST(Dispersion, PhononSpeedInSi)
{
    const auto params = GasParamsSI::from_state(li7_mass, li7_a, 4e-3, 0.5);
    const StatePoint p = reduce(params);
    const double u = u_exact(p);
    const double M = m_dimensionful(u, params);
    const double hbar = constants::hbar;
    // x² = ε_k/M² = ħ²k²/(2m M²)
    const double x = 1e-7;
    const double k = x * M * std::sqrt(2.0 * params.mass_kg) / hbar;
    const double energy = dispersion(p, x).e_over_M2 * M * M;
    const double phonon = energy / (hbar * k);
    EXPECT_NEAR(phonon / (M / std::sqrt(2.0 * params.mass_kg)), 1.0, 1e-12);
    EXPECT_NEAR(phonon / (u * energy_scales(params).c0), 1.0, 1e-12);
}

TEST(Dispersion, EnergyPerWavenumberIncreases)
{
    const StatePoint p(1e-3, -0.5);
    double prev_e = 0.0;
    double prev_ratio = 0.0;
    for (double x = 0.01; x < 100.0; x *= 1.2) {
        const auto d = dispersion(p, x);
        EXPECT_GT(d.e_over_M2, prev_e);
        EXPECT_GT(d.e_over_M2 / x, prev_ratio);
        prev_e = d.e_over_M2;
        prev_ratio = d.e_over_M2 / x;
    }
}

TEST(Modes, ParseAndPrint)
{
    for (auto m : {Mode::exact, Mode::perturbative, Mode::series}) {
        EXPECT_EQ(mode_from_string(to_string(m)), m);
    }
    EXPECT_THROW(mode_from_string("fast"), domain_error);
}
