#ifndef BOSE_EOS_REPORT_HPP
#define BOSE_EOS_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "eos.hpp"
#include "gap_solver.hpp"
#include "series.hpp"
#include "units.hpp"

namespace bose_eos
{

/// Every thermodynamic ratio at one state point.
struct EosReport {
    double gamma = 0.0;
    double r = 0.0;
    double kappa = 0.0;
    double u = 1.0;
    double depletion_fraction = 0.0;
    double mu_ratio = 1.0;
    double pressure_ratio = 1.0;
    double energy_ratio = 1.0;
    double sound_ratio = 1.0;
    Mode mode = Mode::exact;
    std::vector<std::string> flags;
};

struct EvaluationOptions {
    Mode mode = Mode::exact;
    bool drop_m2 = false;
};

/// True when the largest correction term of the energy series exceeds three
/// times the summed correction.
inline bool energy_series_cancels(double gamma, double r, bool drop_m2 = false)
{
    const auto &energy = series::cached_expansion(series::Quantity::energy, drop_m2);
    double largest = 0.0;
    double net = 0.0;
    for (const auto &[key, q] : energy.terms()) {
        if (key.n == 0) {
            continue;
        }
        const double term = series::HalfSeries::term_value(key, q, gamma, r);
        largest = std::max(largest, std::abs(term));
        net += term;
    }
    return largest > 3.0 * std::abs(net);
}

inline EosReport evaluate(const StatePoint &point, const EvaluationOptions &opts = {})
{
    EosReport rep;
    rep.gamma = point.gamma();
    rep.r = point.r();
    rep.mode = opts.mode;
    rep.flags = validity_flags(point);

    const GapSolution gap = solve(point, opts.drop_m2);
    rep.kappa = gap.kappa;

    switch (opts.mode) {
        case Mode::exact:
        case Mode::perturbative: {
            const bool exact = opts.mode == Mode::exact;
            const double u = exact ? gap.u_exact : gap.u_pert;
            rep.u = u;
            rep.depletion_fraction = depletion_fraction(point, u);
            rep.mu_ratio = mu_ratio(point, u);
            rep.pressure_ratio = pressure_ratio(point, u);
            const double slope =
                exact ? du_dkappa_exact(gap.kappa, u) : du_dkappa_perturbative(gap.kappa, opts.drop_m2);
            rep.sound_ratio = sound_ratio(point, u, slope);
            break;
        }
        case Mode::series: {
            using series::Quantity;
            auto eval = [&](Quantity q) {
                return series::cached_expansion(q, opts.drop_m2).evaluate(point.gamma(), point.r());
            };
            rep.u = series::truncate_to_kept_orders(series::u_series(series::max_order, opts.drop_m2))
                        .evaluate(point.gamma(), point.r());
            rep.depletion_fraction = eval(Quantity::depletion);
            rep.mu_ratio = eval(Quantity::mu);
            rep.pressure_ratio = eval(Quantity::pressure);
            rep.sound_ratio = eval(Quantity::sound);
            break;
        }
    }
    rep.energy_ratio = 2.0 * rep.mu_ratio - rep.pressure_ratio;

    if (depletion_negative(point)) {
        rep.flags.emplace_back("depletion_negative");
    }
    if (energy_series_cancels(point.gamma(), point.r(), opts.drop_m2)) {
        rep.flags.emplace_back("cancellation");
    }
    return rep;
}

/// Mean-field values at γ = 0, where StatePoint itself is undefined.
inline EosReport mean_field_report(double r, Mode mode)
{
    EosReport rep;
    rep.r = r;
    rep.mode = mode;
    return rep;
}

inline EosReport evaluate_or_mean_field(double gamma, double r, const EvaluationOptions &opts)
{
    if (gamma == 0.0) {
        return mean_field_report(r, opts.mode);
    }
    return evaluate(StatePoint(gamma, r), opts);
}

// ---- grids ----------------------------------------------------------------

enum class Spacing { linear, log };

struct SweepSpec {
    double gamma_min = 1e-6;
    double gamma_max = 4e-3;
    int points = 50;
    Spacing spacing = Spacing::linear;
    std::vector<double> r_values{0.0};
    Mode mode = Mode::exact;
    bool drop_m2 = false;

    void validate() const
    {
        if (points < 2) {
            throw domain_error("a sweep needs at least 2 points");
        }
        if (spacing == Spacing::log ? !(gamma_min > 0.0) : !(gamma_min >= 0.0)) {
            throw domain_error(spacing == Spacing::log ? "log sweep needs gamma_min > 0"
                                                       : "linear sweep needs gamma_min >= 0");
        }
        if (!(gamma_max > gamma_min)) {
            throw domain_error("gamma_max must exceed gamma_min");
        }
        if (r_values.empty()) {
            throw domain_error("a sweep needs at least one r value");
        }
    }
};

/// Grid including both endpoints exactly.
inline std::vector<double> gamma_grid(const SweepSpec &spec)
{
    spec.validate();
    std::vector<double> out(static_cast<std::size_t>(spec.points));
    const int last = spec.points - 1;
    for (int i = 0; i <= last; ++i) {
        const double f = static_cast<double>(i) / last;
        if (spec.spacing == Spacing::log) {
            out[static_cast<std::size_t>(i)] =
                spec.gamma_min * std::pow(spec.gamma_max / spec.gamma_min, f);
        } else {
            out[static_cast<std::size_t>(i)] = spec.gamma_min + (spec.gamma_max - spec.gamma_min) * f;
        }
    }
    out.front() = spec.gamma_min;
    out.back() = spec.gamma_max;
    return out;
}

/// Rows in r-major order (every γ for the first r, then the next r, ...).
/// Rows are computed on worker threads and assembled by index.
inline std::vector<EosReport> sweep(const SweepSpec &spec)
{
    const auto gammas = gamma_grid(spec);
    const std::size_t n_gamma = gammas.size();
    const std::size_t total = n_gamma * spec.r_values.size();
    const EvaluationOptions opts{spec.mode, spec.drop_m2};

    // Build shared series tables before fanning out.
    (void)series::cached_expansion(series::Quantity::energy);

    std::vector<EosReport> rows(total);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), total / 64 + 1));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < total; i += workers) {
                rows[i] = evaluate_or_mean_field(gammas[i % n_gamma], spec.r_values[i / n_gamma], opts);
            }
        }));
    }
    for (auto &job : jobs) {
        job.get();
    }
    return rows;
}

/// The energy-density figure: series mode on 200 linear points of [0, 4e-3].
inline SweepSpec fig1_spec()
{
    SweepSpec spec;
    spec.gamma_min = 0.0;
    spec.gamma_max = 4e-3;
    spec.points = 200;
    spec.spacing = Spacing::linear;
    spec.r_values = {-1.0, -0.5, 0.0, 0.5, 1.0};
    spec.mode = Mode::series;
    return spec;
}

inline std::vector<DispersionSample> dispersion_table(const StatePoint &point, double x_max, int points)
{
    if (points < 2 || !(x_max > 0.0)) {
        throw domain_error("dispersion table needs x_max > 0 and at least 2 points");
    }
    std::vector<DispersionSample> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double x = i == points - 1 ? x_max : x_max * i / (points - 1);
        out.push_back(dispersion(point, x));
    }
    return out;
}

} // namespace bose_eos

#endif // BOSE_EOS_REPORT_HPP
