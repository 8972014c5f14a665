#include "pyrofront/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pyrofront/numerics.hpp"

namespace pyrofront {

namespace {

int origin_index(const Grid1D& grid) {
    try {
        return grid.index_of(0.0);
    } catch (const ArgumentError&) {
        throw ConfigurationError("wave grid must contain x = 0 as a node");
    }
}

// One application of the fixed-point map in rescaled variables.
std::pair<Field, Field> phi_impl(const Field& v, const Field& w, double om,
                                 const Kernel& kernel, double kappa,
                                 int i0) {
    const Grid1D& grid = v.grid;
    const int n = grid.n_points;

    Field phi1 = cumulative_from_anchor(w, i0);

    const Field conv = convolve_plus(v, kernel);
    Field integrand(grid);
    for (int i = 0; i < n; ++i)
        integrand[i] = std::exp(-om * grid.x(i)) * conv[i];
    const Field inner = cumulative_from_anchor(integrand, i0);

    Field phi2(grid);
    for (int i = 0; i < n; ++i)
        phi2[i] = std::exp(om * grid.x(i)) * (kappa - inner[i]);
    return {std::move(phi1), std::move(phi2)};
}

}  // namespace

Kernel WaveParams::kernel_scaled() const {
    if (c == 1.0) return kernel;
    return kernel.scaled_by(1.0 / c);
}

double WaveParams::norm_weight() const {
    const double om = omega_scaled();
    if (route == ContractionRoute::speed_weighted) return om + 1.0;
    return 4.0 + om + kernel.Lambda / c;
}

void WaveParams::validate() const {
    if (!(omega > 0.0)) throw ArgumentError("wave: omega must be positive");
    if (!(kappa > 0.0)) throw ArgumentError("wave: kappa must be positive");
    if (!(c > 0.0)) throw ArgumentError("wave: c must be positive");
    if (!(tol > 0.0)) throw ArgumentError("wave: tol must be positive");
    if (max_iter < 1) throw ArgumentError("wave: max_iter must be at least 1");
    if (kernel.is_dirac())
        throw ConfigurationError(
            "wave: the idealized point-mass kernel has closed-form waves; "
            "the iteration requires an integrable kernel");
    grid.validate();
    const double two_r = 2.0 * kernel.R;
    if (std::abs(grid.x_min + two_r) > 1e-12 * std::max(1.0, two_r))
        throw ConfigurationError("wave: grid must start at -2R exactly");
    if (!(grid.x_max > 0.0))
        throw ConfigurationError("wave: grid must extend past x = 0");
    origin_index(grid);
}

double WaveProfile::left_limit() const {
    return v_left - w_left / params.omega_scaled();
}

Grid1D wave_grid(double R, double x_max_target, int n_points) {
    if (!(R > 0.0)) throw ArgumentError("wave_grid: R must be positive");
    if (!(x_max_target > 0.0))
        throw ArgumentError("wave_grid: x_max_target must be positive");
    if (n_points < 3) throw ArgumentError("wave_grid: need at least 3 points");
    const double two_r = 2.0 * R;
    const int m = static_cast<int>(
        std::floor((n_points - 1) * two_r / (x_max_target + two_r)));
    if (m < 2)
        throw ConfigurationError(
            "wave_grid: too few points to resolve the kernel support; "
            "increase n_points or reduce x_max_target");
    const double h = two_r / m;
    Grid1D grid{-two_r, -two_r + (n_points - 1) * h, n_points};
    grid.validate();
    return grid;
}

std::pair<Field, Field> apply_phi(const Field& v, const Field& w,
                                  const WaveParams& params) {
    params.validate();
    if (!(v.grid == params.grid) || !(w.grid == params.grid))
        throw ConfigurationError("apply_phi: fields must live on params.grid");
    const int i0 = origin_index(params.grid);
    return phi_impl(v, w, params.omega_scaled(), params.kernel_scaled(),
                    params.kappa, i0);
}

WaveProfile solve(const WaveParams& params) {
    params.validate();
    const Grid1D& grid = params.grid;
    const int n = grid.n_points;
    const double h = grid.h();
    const double om = params.omega_scaled();
    const Kernel kernel_s = params.kernel_scaled();
    const int i0 = origin_index(grid);
    const double R = params.kernel.R;
    const double M = params.norm_weight();

    std::vector<double> weight(n);
    for (int i = 0; i < n; ++i) weight[i] = std::exp(-M * grid.x(i));

    Field v(grid);
    Field w(grid);
    for (int i = 0; i < n; ++i)
        w[i] = params.kappa * std::exp(om * grid.x(i));

    IterationReport report;
    report.norm_weight = M;
    report.route = params.route;
    report.lipschitz_scale = 4.0 * std::exp(3.0 * M * R) / M;
    report.contraction_factor =
        std::exp(3.0 * (4.0 + om + params.kernel.Lambda / params.c) * R) / 4.0;
    report.contraction_certified = report.contraction_factor <= 0.5;
    report.excluded_tail_from = grid.x_max - R;

    const double plain_cut = std::min(grid.x_max, 1.0);
    for (int iter = 1; iter <= params.max_iter; ++iter) {
        auto [nv, nw] = phi_impl(v, w, om, kernel_s, params.kappa, i0);
        if (!nv.all_finite() || !nw.all_finite())
            throw NumericalFailure("wave solve: non-finite iterate at iteration " +
                                   std::to_string(iter));
        double dv = 0.0, dw = 0.0, plain = 0.0;
        for (int i = 0; i < n; ++i) {
            const double av = std::abs(nv[i] - v[i]);
            const double aw = std::abs(nw[i] - w[i]);
            dv = std::max(dv, av * weight[i]);
            dw = std::max(dw, aw * weight[i]);
            if (grid.x(i) <= plain_cut) plain = std::max(plain, av + aw);
        }
        const double delta = dv + dw;
        if (!std::isfinite(delta))
            throw NumericalFailure("wave solve: non-finite update norm");
        report.weighted_deltas.push_back(delta);
        report.plain_sup_delta = plain;
        report.iterations_used = iter;
        v = std::move(nv);
        w = std::move(nw);
        if (delta < params.tol) {
            report.converged = true;
            break;
        }
    }

    const Field conv = convolve_plus(v, kernel_s);
    double residual = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        if (grid.x(i) > report.excluded_tail_from) break;
        const double wprime = (w[i + 1] - w[i - 1]) / (2.0 * h);
        residual = std::max(residual,
                            std::abs(params.omega * w[i] - params.c * wprime -
                                     params.c * conv[i]));
    }
    report.residual_sup = residual;

    WaveProfile profile;
    profile.params = params;
    profile.v = std::move(v);
    profile.w = std::move(w);
    profile.v_left = profile.v[0];
    profile.w_left = profile.w[0];
    profile.conv_right = conv[n - 1];
    profile.iteration = std::move(report);
    return profile;
}

double extend_left(const WaveProfile& profile, double x) {
    const double x_min = profile.v.grid.x_min;
    if (x > x_min + 1e-12 * (1.0 + std::abs(x_min)))
        throw ArgumentError("extend_left: abscissa is right of the grid start");
    const double om = profile.params.omega_scaled();
    return profile.w_left * std::exp(om * (x - x_min)) / om + profile.v_left -
           profile.w_left / om;
}

double evaluate(const WaveProfile& profile, double x) {
    const Grid1D& grid = profile.v.grid;
    if (x < grid.x_min) return extend_left(profile, x);
    if (x <= grid.x_max) return profile.v.interpolate(x);
    const double om = profile.params.omega_scaled();
    const double dx = x - grid.x_max;
    const int n = grid.n_points;
    const double vn = profile.v[n - 1];
    const double wn = profile.w[n - 1];
    const double g = profile.conv_right;
    const double grow = std::expm1(std::min(om * dx, 700.0));
    const double value = vn + grow * (wn / om - g / (om * om)) + g * dx / om;
    return std::clamp(value, -1e12, 1e12);
}

double idealized_wave(double omega, double x, double kappa) {
    if (!(omega > 0.0)) throw ArgumentError("idealized_wave: omega must be positive");
    if (std::abs(omega - 2.0) <= 1e-9) return kappa * x * std::exp(x);
    if (omega > 2.0) {
        const double s = std::sqrt(omega * omega - 4.0);
        const double lp = 0.5 * (omega + s);
        const double lm = 0.5 * (omega - s);
        return kappa * (std::exp(lp * x) - std::exp(lm * x)) / s;
    }
    const double s = std::sqrt(4.0 - omega * omega);
    return kappa * (2.0 / s) * std::exp(0.5 * omega * x) * std::sin(0.5 * s * x);
}

ReconstructionReport reconstruct_from_anchor(const WaveProfile& profile,
                                             int anchor_index) {
    const Grid1D& grid = profile.v.grid;
    const int n = grid.n_points;
    if (anchor_index < 0 || anchor_index >= n)
        throw ArgumentError("reconstruct_from_anchor: anchor out of bounds");
    const double om = profile.params.omega_scaled();
    const double h = grid.h();
    const Kernel kernel_s = profile.params.kernel_scaled();
    const Field conv = convolve_plus(profile.v, kernel_s);

    Field damped(grid);
    for (int i = 0; i < n; ++i)
        damped[i] = std::exp(-om * grid.x(i)) * conv[i];
    const Field inner_a = cumulative_from_anchor(damped, anchor_index);
    const Field inner_b = cumulative_from_anchor(conv, anchor_index);

    const double x0 = grid.x(anchor_index);
    const double v0 = profile.v[anchor_index];
    const double w0 = profile.w[anchor_index];
    const double cut = grid.x_max - profile.params.kernel.R;

    ReconstructionReport report;
    report.anchor_index = anchor_index;
    report.pass = true;
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        if (x > cut) break;
        const double integral = std::exp(om * x) * inner_a[i] - inner_b[i];
        const double recon =
            v0 + std::expm1(om * (x - x0)) * w0 / om - integral / om;
        const double deviation = std::abs(recon - profile.v[i]);
        const double tolerance = 100.0 * h * (1.0 + std::exp(om * x));
        report.max_deviation = std::max(report.max_deviation, deviation);
        report.max_tolerance_ratio =
            std::max(report.max_tolerance_ratio, deviation / tolerance);
        if (deviation > tolerance) report.pass = false;
    }
    return report;
}

ExponentialBoundReport check_exponential_bounds(const WaveProfile& profile) {
    const Grid1D& grid = profile.v.grid;
    const int n = grid.n_points;
    const double om = profile.params.omega_scaled();
    const double kappa = profile.params.kappa;
    const double h = grid.h();

    ExponentialBoundReport report;
    report.tolerance = 1e-6 + 10.0 * h * h;
    report.excluded_from = grid.x_max - profile.params.kernel.R;
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        const double envelope = kappa * std::exp(om * x);
        if (x < 0.0) {
            report.max_lower_violation =
                std::max(report.max_lower_violation, envelope - profile.w[i]);
        } else if (x <= report.excluded_from) {
            report.max_upper_violation =
                std::max(report.max_upper_violation, profile.w[i] - envelope);
        }
    }
    report.max_lower_violation = std::max(report.max_lower_violation, 0.0);
    report.max_upper_violation = std::max(report.max_upper_violation, 0.0);
    report.lower_pass = report.max_lower_violation <= report.tolerance;
    report.upper_pass = report.max_upper_violation <= report.tolerance;
    report.ratio_at_xmax = profile.w[n - 1] * std::exp(-om * grid.x_max);
    report.ratio_below_kappa = report.ratio_at_xmax < kappa;
    return report;
}

MonotonicityReport monotonicity_analysis(const WaveProfile& profile) {
    const Grid1D& grid = profile.v.grid;
    const int n = grid.n_points;

    MonotonicityReport report;
    report.min_w = profile.w[0];
    for (int i = 0; i < n; ++i) {
        report.min_w = std::min(report.min_w, profile.w[i]);
        if (profile.w[i] < 0.0 && report.first_negative_index < 0) {
            report.first_negative_index = i;
            report.first_negative_x = grid.x(i);
        }
    }

    const Kernel& kernel = profile.params.kernel;
    const double lambda = kernel.Lambda;
    const double R = kernel.R;
    const bool unit_setup = std::abs(profile.params.c - 1.0) <= 1e-12 &&
                            std::abs(profile.params.omega - 1.0) <= 1e-12 &&
                            kernel.shape == KernelShape::step && lambda > 0.0;
    if (unit_setup) {
        const double er = std::exp(R);
        report.precondition_value = lambda * (er * (er - 1.0) - R);
        if (report.precondition_value < 1.0) {
            report.closed_form_available = true;
            report.L = std::log((1.0 + lambda * (er + R - 1.0)) /
                                (lambda * (er - std::exp(-R))));
            report.positive_up_to_L = true;
            for (int i = 0; i < n; ++i) {
                if (grid.x(i) > report.L) break;
                if (!(profile.w[i] > 0.0)) report.positive_up_to_L = false;
            }
        }
    }
    return report;
}

DivergenceReport divergence_probe(const WaveProfile& profile) {
    const Grid1D& grid = profile.v.grid;
    const int n = grid.n_points;
    const double om = profile.params.omega_scaled();
    if (grid.x_max < 5.0 / om)
        throw ArgumentError(
            "divergence_probe: grid must extend to at least 5/omega");

    DivergenceReport report;
    report.v_at_xmax = profile.v[n - 1];
    report.left_limit = profile.left_limit();

    double sup_abs = 0.0;
    for (int i = 0; i < n; ++i) sup_abs = std::max(sup_abs, std::abs(profile.v[i]));
    report.degenerate_constant = sup_abs <= 1e-14;

    report.increasing_tail = true;
    const int tail_start = std::max(0, n - std::max(2, n / 10));
    for (int i = tail_start; i + 1 < n; ++i) {
        if (std::abs(profile.v[i + 1]) <
            std::abs(profile.v[i]) - 1e-15 * (1.0 + std::abs(profile.v[i])))
            report.increasing_tail = false;
    }
    report.exceeds_threshold =
        report.v_at_xmax > 10.0 * std::abs(report.left_limit) + 1.0;
    report.pass = report.increasing_tail && report.exceeds_threshold &&
                  !report.degenerate_constant;
    return report;
}

}  // namespace pyrofront
