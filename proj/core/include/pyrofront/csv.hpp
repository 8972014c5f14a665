#pragma once

#include <string>
#include <vector>

#include "pyrofront/pde.hpp"
#include "pyrofront/stability.hpp"
#include "pyrofront/waves.hpp"

namespace pyrofront {

/// Shortest decimal form that round-trips a double (17 significant digits,
/// general format); used for every numeric CSV cell so that equal values
/// produce byte-identical files.
std::string format_real(double value);

/// "true"/"false" cell for boolean columns.
std::string format_flag(bool value);

/// dir + "/" + name (plain concatenation when dir is empty).
std::string join_path(const std::string& dir, const std::string& name);

/// Writes header + rows as UTF-8 with LF line endings, creating parent
/// directories as needed.  I/O failure throws IoError.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

/// Wave profile export: header `x,v,w,idealized`; the idealized column is
/// the closed-form comparison wave for the profile's omega and kappa.
void write_wave_csv(const std::string& path, const WaveProfile& profile,
                    bool include_idealized);

/// Trajectory export: header `t,x,u`, one row per snapshot node.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

/// Stability export: header `name,sigma,bound,Q,pass`.
void write_stability_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, SmallSupportReport>>& rows);

}  // namespace pyrofront
