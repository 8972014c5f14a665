#include "pyrofront/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace pyrofront {

namespace {

double table_value(const std::vector<std::pair<double, double>>& table, double r) {
    if (table.empty()) return 0.0;
    if (r <= table.front().first) return (r < table.front().first) ? 0.0 : table.front().second;
    if (r >= table.back().first) return (r > table.back().first) ? 0.0 : table.back().second;
    auto it = std::upper_bound(table.begin(), table.end(), r,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    const auto& [r1, k1] = *it;
    const auto& [r0, k0] = *(it - 1);
    const double t = (r - r0) / (r1 - r0);
    return k0 + t * (k1 - k0);
}

}  // namespace

double Kernel::value(double r) const {
    const double a = std::abs(r);
    switch (shape) {
        case KernelShape::step:
            return (a < R) ? step_height : 0.0;
        case KernelShape::gaussian:
            return (a < R) ? gauss_amplitude * std::exp(-a * a / (2.0 * gauss_sigma * gauss_sigma)) : 0.0;
        case KernelShape::dirac_idealized:
            throw ConfigurationError("idealized point-mass kernel has no pointwise values");
        case KernelShape::tabulated:
            return (a < R) ? table_value(table, a) : 0.0;
    }
    return 0.0;
}

double Kernel::support_edge_value() const {
    switch (shape) {
        case KernelShape::step:
            return step_height;
        case KernelShape::gaussian:
            return gauss_amplitude * std::exp(-R * R / (2.0 * gauss_sigma * gauss_sigma));
        case KernelShape::dirac_idealized:
            throw ConfigurationError("idealized point-mass kernel has no pointwise values");
        case KernelShape::tabulated:
            return table.empty() ? 0.0 : table.back().second;
    }
    return 0.0;
}

double Kernel::mass() const {
    switch (shape) {
        case KernelShape::step:
            return 2.0 * step_height * R;
        case KernelShape::gaussian: {
            // integral of A exp(-r^2/2s^2) over (-R, R) = A s sqrt(2 pi) erf(R/(s sqrt 2))
            const double s = gauss_sigma;
            return gauss_amplitude * s * std::sqrt(2.0 * std::numbers::pi) *
                   std::erf(R / (s * std::numbers::sqrt2));
        }
        case KernelShape::dirac_idealized:
            return 1.0;
        case KernelShape::tabulated: {
            if (table.size() < 2) return 0.0;
            double half = 0.0;
            for (std::size_t i = 1; i < table.size(); ++i) {
                half += 0.5 * (table[i].second + table[i - 1].second) *
                        (table[i].first - table[i - 1].first);
            }
            return 2.0 * half;  // even extension
        }
    }
    return 0.0;
}

bool Kernel::is_zero() const {
    switch (shape) {
        case KernelShape::step:
            return step_height == 0.0;
        case KernelShape::gaussian:
            return gauss_amplitude == 0.0;
        case KernelShape::dirac_idealized:
            return false;
        case KernelShape::tabulated:
            return std::all_of(table.begin(), table.end(),
                               [](const auto& p) { return p.second == 0.0; });
    }
    return false;
}

Kernel Kernel::scaled_by(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw ArgumentError("kernel scale factor must be positive and finite");
    Kernel k = *this;
    k.Lambda *= factor;
    k.lambda_lower *= factor;
    k.step_height *= factor;
    k.gauss_amplitude *= factor;
    for (auto& [r, v] : k.table) v *= factor;
    if (shape == KernelShape::dirac_idealized && factor != 1.0)
        throw ConfigurationError("idealized point-mass kernel cannot be rescaled");
    return k;
}

Kernel make_step(double Lambda, double R) {
    if (!(Lambda > 0.0) || !std::isfinite(Lambda)) throw ArgumentError("step kernel needs Lambda > 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw ArgumentError("step kernel needs R > 0");
    Kernel k;
    k.shape = KernelShape::step;
    k.Lambda = Lambda;
    k.R = R;
    k.lambda_lower = Lambda;
    k.rho_lower = R;
    k.step_height = Lambda;
    return k;
}

Kernel make_gaussian(double amplitude, double sigma, double R) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw ArgumentError("gaussian kernel needs amplitude > 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("gaussian kernel needs sigma > 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw ArgumentError("gaussian kernel needs R > 0");
    Kernel k;
    k.shape = KernelShape::gaussian;
    k.Lambda = amplitude;
    k.R = R;
    k.gauss_amplitude = amplitude;
    k.gauss_sigma = sigma;
    // the gaussian dominates its boundary value on all of (-R, R)
    k.lambda_lower = amplitude * std::exp(-R * R / (2.0 * sigma * sigma));
    k.rho_lower = R;
    return k;
}

Kernel make_dirac_idealized() {
    Kernel k;
    k.shape = KernelShape::dirac_idealized;
    k.Lambda = std::numeric_limits<double>::infinity();
    k.R = 0.0;
    return k;
}

Kernel make_zero() {
    Kernel k;
    k.shape = KernelShape::step;
    k.Lambda = 0.0;
    k.R = 0.5;
    k.lambda_lower = 0.0;
    k.rho_lower = 0.5;
    k.step_height = 0.0;
    return k;
}

Kernel make_tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ArgumentError("tabulated kernel needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
            throw ArgumentError("tabulated kernel samples must be finite");
        if (samples[i].second < 0.0) throw ArgumentError("tabulated kernel values must be nonnegative");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw ArgumentError("tabulated kernel positions must be strictly ascending");
    }
    if (samples.front().first < 0.0) throw ArgumentError("tabulated kernel positions must start at r >= 0");
    Kernel k;
    k.shape = KernelShape::tabulated;
    k.table = std::move(samples);
    k.R = k.table.back().first;
    k.Lambda = 0.0;
    for (const auto& [r, v] : k.table) k.Lambda = std::max(k.Lambda, v);
    k.lambda_lower = 0.0;
    k.rho_lower = 0.0;
    return k;
}

Kernel load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open kernel table: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double r = 0.0, v = 0.0;
        if (!(ls >> r >> v)) throw IoError("malformed kernel table line: " + line);
        samples.emplace_back(r, v);
    }
    return make_tabulated(std::move(samples));
}

EnvelopeReport certify(const Kernel& kernel, int samples) {
    if (samples < 100) throw ArgumentError("envelope certification needs at least 100 samples");
    EnvelopeReport report;
    report.samples = samples;
    if (kernel.is_dirac()) {
        report.pass = true;
        report.mass = 1.0;
        report.note = "idealized point mass: envelopes hold by convention, no pointwise sampling";
        return report;
    }
    const double extent = 1.5 * kernel.R;
    for (int i = 0; i < samples; ++i) {
        const double r = -extent + 2.0 * extent * static_cast<double>(i) / (samples - 1);
        const double k = kernel.value(r);
        const double upper = (std::abs(r) < kernel.R) ? kernel.Lambda : 0.0;
        const double lower = (std::abs(r) < kernel.rho_lower) ? kernel.lambda_lower : 0.0;
        report.upper_violation = std::max(report.upper_violation, k - upper);
        report.lower_violation = std::max(report.lower_violation, lower - k);
    }
    report.mass = kernel.mass();
    if (kernel.shape == KernelShape::gaussian) {
        const double s = kernel.gauss_sigma;
        const double full = kernel.gauss_amplitude * s * std::sqrt(2.0 * std::numbers::pi);
        report.truncation_loss = full - report.mass;
    }
    report.pass = report.upper_violation <= 1e-12 && report.lower_violation <= 1e-12;
    return report;
}

}  // namespace pyrofront
