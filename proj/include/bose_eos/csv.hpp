#ifndef BOSE_EOS_CSV_HPP
#define BOSE_EOS_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "eos.hpp"
#include "report.hpp"

namespace bose_eos::csv
{

/// Round-trippable decimal form ("%.17g"), locale independent for the C locale.
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join_flags(const std::vector<std::string> &flags)
{
    std::string out;
    for (const auto &f : flags) {
        out += (out.empty() ? "" : ";") + f;
    }
    return out;
}

inline void write_reports(std::ostream &os, const std::vector<EosReport> &rows)
{
    os << "gamma,r,mode,kappa,u,depletion_fraction,mu_ratio,pressure_ratio,energy_ratio,sound_ratio,flags\n";
    for (const auto &row : rows) {
        os << format_double(row.gamma) << ',' << format_double(row.r) << ',' << to_string(row.mode) << ','
           << format_double(row.kappa) << ',' << format_double(row.u) << ','
           << format_double(row.depletion_fraction) << ',' << format_double(row.mu_ratio) << ','
           << format_double(row.pressure_ratio) << ',' << format_double(row.energy_ratio) << ','
           << format_double(row.sound_ratio) << ',' << join_flags(row.flags) << '\n';
    }
}

/// gamma,r,energy_ratio
inline void write_fig1(std::ostream &os, const std::vector<EosReport> &rows)
{
    os << "gamma,r,energy_ratio\n";
    for (const auto &row : rows) {
        os << format_double(row.gamma) << ',' << format_double(row.r) << ','
           << format_double(row.energy_ratio) << '\n';
    }
}

inline void write_dispersion(std::ostream &os, const std::vector<DispersionSample> &rows)
{
    os << "x,e_over_M2\n";
    for (const auto &row : rows) {
        os << format_double(row.x) << ',' << format_double(row.e_over_M2) << '\n';
    }
}

} // namespace bose_eos::csv

#endif // BOSE_EOS_CSV_HPP
