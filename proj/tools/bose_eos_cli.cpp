// bose-eos: command-line front end for the zero-temperature equation of state.
//
//   bose-eos report     --gamma G --r R [--mode exact|perturbative|series]
//   bose-eos sweep      --gamma-min A --gamma-max B --points N [--log] --r R ...
//   bose-eos fig1       [--out FILE]
//   bose-eos dispersion --gamma G --r R --x-max X --points N
//   bose-eos series     WHICH [--order N]
//   bose-eos validate   [--drop-m2]
//
// Exit codes: 0 success, 1 validation failure, 2 domain/usage error, 3 I/O error.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <bose_eos/bose_eos.hpp>

namespace
{

using json = nlohmann::ordered_json;
using namespace bose_eos;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_domain = 2;
constexpr int exit_io = 3;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat "key = value" settings file; '#' starts a comment.
class ConfigFile
{
public:
    ConfigFile() = default;

    explicit ConfigFile(const std::string &path)
    {
        std::ifstream in(path);
        if (!in) {
            throw io_error("cannot read config file " + path);
        }
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw domain_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
            }
            std::string key = trim(line.substr(0, eq));
            std::replace(key.begin(), key.end(), '_', '-');
            values_[key] = trim(line.substr(eq + 1));
        }
    }

    [[nodiscard]] std::optional<std::string> get(const std::string &key) const
    {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

private:
    static std::string trim(const std::string &s)
    {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            return {};
        }
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
};

double parse_double(const std::string &key, const std::string &text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw domain_error("config value for '" + key + "' is not a number: " + text);
    }
}

bool parse_bool(const std::string &key, const std::string &text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw domain_error("config value for '" + key + "' is not a boolean: " + text);
}

std::vector<double> parse_list(const std::string &key, std::string text)
{
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream is(text);
    std::vector<double> out;
    std::string item;
    while (is >> item) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

/// Raw command-line values; unset options fall back to the config file, then defaults.
struct Flags {
    std::optional<double> gamma;
    std::vector<double> r;
    std::optional<std::string> mode;
    std::optional<int> order;
    std::optional<double> gamma_min;
    std::optional<double> gamma_max;
    std::optional<int> points;
    bool log = false;
    std::optional<double> x_max;
    std::optional<std::string> output;
    std::optional<std::string> out;
    std::optional<std::string> config;
    std::string which = "energy";
    bool drop_m2 = false;
    bool quiet = false;
    double kappa_scale = 1.0;
};

struct Settings {
    double gamma = 4e-3;
    std::vector<double> r{0.0};
    Mode mode = Mode::exact;
    int order = series::max_order;
    double gamma_min = 1e-6;
    double gamma_max = 4e-3;
    std::optional<int> points;
    bool log = false;
    double x_max = 10.0;
    std::string output = "csv";
    std::optional<std::string> out;
    bool drop_m2 = false;
    bool quiet = false;
};

Settings resolve(const Flags &f, const CLI::App &app)
{
    const ConfigFile cfg = f.config ? ConfigFile(*f.config) : ConfigFile();
    auto flag_given = [&app](const std::string &name) {
        if (const auto *opt = app.get_option_no_throw(name)) {
            if (opt->count() > 0) {
                return true;
            }
        }
        for (const auto *sub : app.get_subcommands()) {
            if (const auto *opt = sub->get_option_no_throw(name); opt != nullptr && opt->count() > 0) {
                return true;
            }
        }
        return false;
    };

    Settings s;
    auto pick_double = [&](const std::optional<double> &flag, const std::string &key, double &dst) {
        if (flag) {
            dst = *flag;
        } else if (auto v = cfg.get(key)) {
            dst = parse_double(key, *v);
        }
    };
    pick_double(f.gamma, "gamma", s.gamma);
    pick_double(f.gamma_min, "gamma-min", s.gamma_min);
    pick_double(f.gamma_max, "gamma-max", s.gamma_max);
    pick_double(f.x_max, "x-max", s.x_max);

    if (!f.r.empty()) {
        s.r = f.r;
    } else if (auto v = cfg.get("r")) {
        s.r = parse_list("r", *v);
    }
    if (f.mode) {
        s.mode = mode_from_string(*f.mode);
    } else if (auto v = cfg.get("mode")) {
        s.mode = mode_from_string(*v);
    }
    if (f.order) {
        s.order = *f.order;
    } else if (auto v = cfg.get("order")) {
        s.order = static_cast<int>(parse_double("order", *v));
    }
    if (f.points) {
        s.points = *f.points;
    } else if (auto v = cfg.get("points")) {
        s.points = static_cast<int>(parse_double("points", *v));
    }
    if (f.output) {
        s.output = *f.output;
    } else if (auto v = cfg.get("output")) {
        s.output = *v;
    }
    if (s.output != "csv" && s.output != "json") {
        throw domain_error("--output must be csv or json");
    }
    if (f.out) {
        s.out = f.out;
    } else if (auto v = cfg.get("out")) {
        s.out = *v;
    }
    auto pick_bool = [&](bool flag, const std::string &name, bool &dst) {
        if (flag_given("--" + name)) {
            dst = flag;
        } else if (auto v = cfg.get(name)) {
            dst = parse_bool(name, *v);
        }
    };
    pick_bool(f.log, "log", s.log);
    pick_bool(f.drop_m2, "drop-m2", s.drop_m2);
    pick_bool(f.quiet, "quiet", s.quiet);
    return s;
}

/// Writes to --out when given, otherwise to stdout unless --quiet.
void emit(const Settings &s, const std::string &text)
{
    if (s.out) {
        std::ofstream file(*s.out, std::ios::binary);
        if (!file) {
            throw io_error("cannot open " + *s.out + " for writing");
        }
        file << text;
        file.flush();
        if (!file) {
            throw io_error("failed writing " + *s.out);
        }
        return;
    }
    if (!s.quiet) {
        std::cout << text;
    }
}

void warn_flags(const Settings &s, const EosReport &rep)
{
    if (s.quiet || rep.flags.empty()) {
        return;
    }
    std::cerr << "warning: gamma=" << csv::format_double(rep.gamma) << " r=" << csv::format_double(rep.r)
              << ": " << csv::join_flags(rep.flags) << '\n';
}

json report_json(const EosReport &rep)
{
    return json{{"gamma", rep.gamma},
                {"r", rep.r},
                {"mode", std::string(to_string(rep.mode))},
                {"kappa", rep.kappa},
                {"u", rep.u},
                {"depletion_fraction", rep.depletion_fraction},
                {"mu_ratio", rep.mu_ratio},
                {"pressure_ratio", rep.pressure_ratio},
                {"energy_ratio", rep.energy_ratio},
                {"sound_ratio", rep.sound_ratio},
                {"flags", rep.flags}};
}

std::string render_reports(const Settings &s, const std::vector<EosReport> &rows, bool as_array)
{
    if (s.output == "json") {
        if (!as_array && rows.size() == 1) {
            return report_json(rows.front()).dump(2) + "\n";
        }
        json arr = json::array();
        for (const auto &row : rows) {
            arr.push_back(report_json(row));
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    csv::write_reports(os, rows);
    return os.str();
}

int cmd_report(const Settings &s)
{
    const StatePoint point(s.gamma, s.r.front());
    const auto rep = evaluate(point, {s.mode, s.drop_m2});
    warn_flags(s, rep);
    emit(s, render_reports(s, {rep}, false));
    return exit_ok;
}

int cmd_sweep(const Settings &s)
{
    SweepSpec spec;
    spec.gamma_min = s.gamma_min;
    spec.gamma_max = s.gamma_max;
    spec.points = s.points.value_or(50);
    spec.spacing = s.log ? Spacing::log : Spacing::linear;
    spec.r_values = s.r;
    spec.mode = s.mode;
    spec.drop_m2 = s.drop_m2;
    const auto rows = sweep(spec);
    emit(s, render_reports(s, rows, true));
    return exit_ok;
}

int cmd_fig1(const Settings &s)
{
    const auto rows = sweep(fig1_spec());
    if (s.output == "json") {
        json arr = json::array();
        for (const auto &row : rows) {
            arr.push_back(json{{"gamma", row.gamma}, {"r", row.r}, {"energy_ratio", row.energy_ratio}});
        }
        emit(s, arr.dump(2) + "\n");
    } else {
        std::ostringstream os;
        csv::write_fig1(os, rows);
        emit(s, os.str());
    }
    return exit_ok;
}

int cmd_dispersion(const Settings &s)
{
    const StatePoint point(s.gamma, s.r.front());
    const auto rows = dispersion_table(point, s.x_max, s.points.value_or(101));
    if (s.output == "json") {
        json arr = json::array();
        for (const auto &row : rows) {
            arr.push_back(json{{"x", row.x}, {"e_over_M2", row.e_over_M2}});
        }
        emit(s, arr.dump(2) + "\n");
    } else {
        std::ostringstream os;
        csv::write_dispersion(os, rows);
        emit(s, os.str());
    }
    return exit_ok;
}

int cmd_series(const Settings &s, const std::string &which_name)
{
    const auto which = series::quantity_from_string(which_name);
    if (s.order < 0 || s.order > series::max_order) {
        throw domain_error("--order must lie in [0, 4]");
    }
    const auto expansion = series::expand_quantity(which, s.order, s.drop_m2);
    if (s.output == "json") {
        json terms = json::array();
        for (const auto &[key, q] : expansion.terms()) {
            terms.push_back(json{{"gamma_half_power", key.n},
                                 {"sqrt_pi_power", key.p},
                                 {"r_power", key.j},
                                 {"rational", q.str()},
                                 {"exact", (q < 0 ? "-" : "") + series::format_term(key, q)},
                                 {"value", q.convert_to<double>() * std::pow(std::sqrt(std::numbers::pi), key.p)}});
        }
        emit(s, json{{"quantity", which_name}, {"order", s.order}, {"terms", terms}}.dump(2) + "\n");
    } else {
        emit(s, std::string(series::to_string(which)) + " = " + series::to_exact_string(expansion) + "\n"
                    + series::to_text(expansion));
    }
    return exit_ok;
}

int cmd_validate(const Settings &s, double kappa_scale)
{
    validation::ValidateOptions opts;
    opts.drop_m2 = s.drop_m2;
    opts.kappa_scale = kappa_scale;
    const auto results = validation::run_all(opts);
    const bool ok = validation::all_passed(results);
    if (s.output == "json") {
        json arr = json::array();
        for (const auto &c : results) {
            arr.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        emit(s, json{{"passed", ok}, {"checks", arr}}.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto &c : results) {
            os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        }
        os << (ok ? "all checks passed\n" : "validation FAILED\n");
        emit(s, os.str());
    }
    if (!ok && s.quiet) {
        for (const auto &c : results) {
            if (!c.passed) {
                std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
            }
        }
    }
    return ok ? exit_ok : exit_validation;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Zero-temperature equation of state of a dilute Bose gas with finite-range corrections",
                 "bose-eos"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--output", f.output, "Output format: csv or json");
    app.add_flag("--quiet", f.quiet, "Suppress stdout output and warnings");
    app.add_option("--config", f.config, "Settings file with 'key = value' lines");
    app.add_flag("--drop-m2", f.drop_m2, "Drop the second-order gap correction");
    app.add_option("--out", f.out, "Write output to FILE instead of stdout");

    auto *report = app.add_subcommand("report", "All ratios at one state point");
    auto *sweep_cmd = app.add_subcommand("sweep", "Ratios over a gas-parameter grid");
    auto *fig1 = app.add_subcommand("fig1", "Energy density vs gas parameter for r in {-1,-0.5,0,0.5,1}");
    auto *disp = app.add_subcommand("dispersion", "Excitation spectrum table");
    auto *series_cmd = app.add_subcommand("series", "Exact half-power expansion of one quantity");
    auto *validate = app.add_subcommand("validate", "Run the built-in verification checks");

    for (auto *sub : {report, disp}) {
        sub->add_option("--gamma", f.gamma, "Gas parameter rho*a_s^3");
        sub->add_option("--r", f.r, "Range ratio r_s/a_s");
    }
    report->add_option("--mode", f.mode, "exact | perturbative | series");
    sweep_cmd->add_option("--gamma-min", f.gamma_min);
    sweep_cmd->add_option("--gamma-max", f.gamma_max);
    sweep_cmd->add_option("--points", f.points);
    sweep_cmd->add_flag("--log", f.log, "Logarithmic spacing");
    sweep_cmd->add_option("--r", f.r, "Range ratio (repeatable)");
    sweep_cmd->add_option("--mode", f.mode, "exact | perturbative | series");
    disp->add_option("--x-max", f.x_max);
    disp->add_option("--points", f.points);
    series_cmd->add_option("which", f.which, "depletion | mu | pressure | energy | sound");
    series_cmd->add_option("--order", f.order, "Highest half-power kept (0..4)");
    validate->add_option("--kappa-scale", f.kappa_scale, "Test hook: scale kappa in the gap-closure check")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_domain;
    }

    try {
        const Settings s = resolve(f, app);
        if (*report) {
            return cmd_report(s);
        }
        if (*sweep_cmd) {
            return cmd_sweep(s);
        }
        if (*fig1) {
            return cmd_fig1(s);
        }
        if (*disp) {
            return cmd_dispersion(s);
        }
        if (*series_cmd) {
            return cmd_series(s, f.which);
        }
        if (*validate) {
            return cmd_validate(s, f.kappa_scale);
        }
    } catch (const io_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const bose_eos::error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
    return exit_domain;
}
