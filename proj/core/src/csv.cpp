#include "pyrofront/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

namespace pyrofront {

std::string format_real(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                      std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

std::string format_flag(bool value) { return value ? "true" : "false"; }

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return (std::filesystem::path(dir) / name).string();
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(target.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " +
                          target.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << header << '\n';
    for (const auto& row : rows) out << row << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

void write_wave_csv(const std::string& path, const WaveProfile& profile,
                    bool include_idealized) {
    const Grid1D& grid = profile.v.grid;
    std::vector<std::string> rows;
    rows.reserve(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        std::string row = format_real(x);
        row += ',';
        row += format_real(profile.v[i]);
        row += ',';
        row += format_real(profile.w[i]);
        if (include_idealized) {
            row += ',';
            row += format_real(
                idealized_wave(profile.params.omega_scaled(), x, profile.params.kappa));
        }
        rows.push_back(std::move(row));
    }
    write_csv(path, include_idealized ? "x,v,w,idealized" : "x,v,w", rows);
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
    std::vector<std::string> rows;
    for (const auto& [t, state] : trajectory.snapshots) {
        const std::string t_cell = format_real(t);
        for (int i = 0; i < state.size(); ++i) {
            std::string row = t_cell;
            row += ',';
            row += format_real(state.grid.x(i));
            row += ',';
            row += format_real(state[i]);
            rows.push_back(std::move(row));
        }
    }
    write_csv(path, "t,x,u", rows);
}

void write_stability_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, SmallSupportReport>>& rows) {
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& [name, report] : rows) {
        std::string row = name;
        row += ',';
        row += format_real(report.sigma);
        row += ',';
        row += format_real(report.bound);
        row += ',';
        row += format_real(report.Q);
        row += ',';
        row += format_flag(report.pass);
        lines.push_back(std::move(row));
    }
    write_csv(path, "name,sigma,bound,Q,pass", lines);
}

}  // namespace pyrofront
