#include "pyrofront/pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pyrofront/numerics.hpp"

namespace pyrofront {

namespace {

// Kernel value for quadrature across an interior jump: nodes landing exactly
// on the support boundary take half the inside limit, which keeps the
// trapezoid rule exact for node-aligned step kernels.
double kernel_quad_value(const Kernel& k, double r) {
    const double a = std::abs(r);
    if (std::abs(a - k.R) <= 1e-12 * std::max(1.0, k.R)) return 0.5 * k.support_edge_value();
    return k.value(a);
}

double sup_abs(const Field& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

long long step_count(double t_end, double dt) {
    const double q = t_end / dt;
    const long long r = std::llround(q);
    if (r >= 1 && std::abs(q - static_cast<double>(r)) <= 1e-9 * std::max(1.0, q)) return r;
    return static_cast<long long>(std::ceil(q - 1e-12));
}

std::vector<double> nonlocal_term(const Field& u, const ProblemSpec& spec,
                                  const RadialWeights* rw) {
    if (spec.mode == DomainMode::interval) {
        Field shifted(u.grid);
        for (int i = 0; i < u.size(); ++i) shifted[i] = u[i] - spec.Theta;
        return convolve_plus(shifted, spec.kernel).values;
    }
    return rw->apply(u, spec.Theta);
}

Field euler_update(const Field& u, double t, const ProblemSpec& spec,
                   const std::vector<double>& nl) {
    const Grid1D& g = u.grid;
    const int n = g.n_points;
    const double h = g.h();
    const double c = spec.c;
    const double dt = spec.dt;
    const double gb = spec.boundary(t + dt);
    Field next(g);
    if (spec.mode == DomainMode::interval) {
        next[0] = gb;
        for (int i = 1; i < n - 1; ++i) {
            const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
            next[i] = u[i] + dt * (c * lap + nl[i]);
        }
        next[n - 1] = gb;
    } else {
        const int d = spec.dimension;
        // r = 0: the symmetric ghost node turns the Laplacian into its limit 2n u''(0)
        const double lap0 = 2.0 * d * (u[1] - u[0]) / (h * h);
        next[0] = u[0] + dt * (c * lap0 + nl[0]);
        for (int i = 1; i < n - 1; ++i) {
            const double r = g.x(i);
            const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) +
                               (d - 1) * (u[i + 1] - u[i - 1]) / (2.0 * h * r);
            next[i] = u[i] + dt * (c * lap + nl[i]);
        }
        next[n - 1] = gb;
    }
    return next;
}

Trajectory run(const ProblemSpec& spec, bool frozen) {
    spec.validate();
    RadialWeights rw;
    const RadialWeights* rwp = nullptr;
    if (spec.mode == DomainMode::radial) {
        rw = build_radial_weights(spec.grid, spec.kernel, spec.dimension);
        rwp = &rw;
    }
    const long long n_steps = step_count(spec.t_end, spec.dt);
    const long long stride = spec.snapshot_stride > 0
                                 ? spec.snapshot_stride
                                 : std::max<long long>(1, n_steps / 256);

    Trajectory traj;
    traj.spec = spec;
    Field u = spec.initial;
    traj.snapshots.emplace_back(0.0, u);

    std::vector<double> frozen_nl;
    if (frozen) frozen_nl = nonlocal_term(u, spec, rwp);

    for (long long k = 1; k <= n_steps; ++k) {
        const double t_prev = static_cast<double>(k - 1) * spec.dt;
        const double t_now = static_cast<double>(k) * spec.dt;
        u = euler_update(u, t_prev, spec, frozen ? frozen_nl : nonlocal_term(u, spec, rwp));
        if (!u.all_finite()) {
            traj.blew_up = true;
            traj.blowup_time = t_now;
            break;  // last recorded snapshot stays the last finite state
        }
        if (sup_abs(u) > 1e12) {
            traj.blew_up = true;
            traj.blowup_time = t_now;
            traj.snapshots.emplace_back(t_now, u);
            break;
        }
        if (k % stride == 0 || k == n_steps) traj.snapshots.emplace_back(t_now, u);
    }
    return traj;
}

}  // namespace

double ProblemSpec::cfl_limit() const {
    const double h = grid.h();
    const double denom = (mode == DomainMode::radial) ? 2.0 * c * dimension : 2.0 * c;
    return h * h / denom;
}

void ProblemSpec::validate() const {
    grid.validate();
    if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("ProblemSpec: c must be > 0");
    if (!std::isfinite(Theta)) throw ArgumentError("ProblemSpec: Theta must be finite");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("ProblemSpec: dt must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ArgumentError("ProblemSpec: t_end must be > 0");
    if (!boundary) throw ArgumentError("ProblemSpec: boundary function must be set");
    if (!(initial.grid == grid)) throw ArgumentError("ProblemSpec: initial data must live on the problem grid");
    if (!initial.all_finite()) throw ArgumentError("ProblemSpec: initial data must be finite");
    if (mode == DomainMode::radial) {
        if (dimension < 1 || dimension > 3)
            throw ConfigurationError("ProblemSpec: radial mode ships dimensions 1..3 only");
        if (grid.x_min != 0.0) throw ConfigurationError("ProblemSpec: radial grid must start at r = 0");
    }
    if (dt > cfl_limit() * (1.0 + 1e-12))
        throw ConfigurationError(mode == DomainMode::radial
                                     ? "ProblemSpec: dt exceeds the stability bound h^2/(2cn)"
                                     : "ProblemSpec: dt exceeds the stability bound h^2/(2c)");
    const double g0 = boundary(0.0);
    const int last = grid.n_points - 1;
    const bool left_is_boundary = (mode == DomainMode::interval);
    if (left_is_boundary && std::abs(initial[0] - g0) > 1e-9)
        throw ConfigurationError("ProblemSpec: initial data disagrees with g(0) at the left boundary");
    if (std::abs(initial[last] - g0) > 1e-9)
        throw ConfigurationError("ProblemSpec: initial data disagrees with g(0) at the right boundary");
}

std::vector<double> RadialWeights::apply(const Field& u, double Theta) const {
    const int n = grid.n_points;
    std::vector<double> weighted(n);
    for (int j = 0; j < n; ++j) weighted[j] = s_weight[j] * std::max(u[j] - Theta, 0.0);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = angular.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) acc += weighted[j] * row[j];
        out[i] = acc;
    }
    return out;
}

RadialWeights build_radial_weights(const Grid1D& grid, const Kernel& kernel, int dimension,
                                   int theta_panels) {
    grid.validate();
    if (grid.x_min != 0.0) throw ConfigurationError("radial weights need a grid starting at r = 0");
    if (dimension < 1 || dimension > 3)
        throw ConfigurationError("radial weights ship for dimensions 1..3 only");
    if (kernel.is_dirac())
        throw ConfigurationError("a point-mass kernel has no pointwise values to integrate radially");
    if (theta_panels < 16) throw ArgumentError("radial weights need at least 16 angular panels");

    const int n = grid.n_points;
    const double h = grid.h();
    RadialWeights rw;
    rw.grid = grid;
    rw.dimension = dimension;
    rw.theta_panels = theta_panels;
    rw.s_weight.assign(n, h);
    rw.s_weight.front() = 0.5 * h;
    rw.s_weight.back() = 0.5 * h;
    rw.angular.assign(static_cast<std::size_t>(n) * n, 0.0);
    if (kernel.is_zero()) return rw;

    const double dtheta = std::numbers::pi / theta_panels;
    for (int i = 0; i < n; ++i) {
        const double r = grid.x(i);
        double* row = rw.angular.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double s = grid.x(j);
            if (dimension == 1) {
                row[j] = kernel_quad_value(kernel, r - s) + kernel_quad_value(kernel, r + s);
            } else {
                // collapse the sphere directions: distance between points at radii
                // r and s with polar angle theta is sqrt(r^2 + s^2 - 2 r s cos theta)
                double acc = 0.0;
                for (int k = 0; k <= theta_panels; ++k) {
                    const double theta = k * dtheta;
                    const double dist =
                        std::sqrt(std::max(r * r + s * s - 2.0 * r * s * std::cos(theta), 0.0));
                    const double kv = kernel_quad_value(kernel, dist);
                    const double contrib = (dimension == 2) ? kv : kv * std::sin(theta);
                    acc += (k == 0 || k == theta_panels) ? 0.5 * contrib : contrib;
                }
                acc *= dtheta;
                row[j] = (dimension == 2) ? 2.0 * s * acc
                                          : 2.0 * std::numbers::pi * s * s * acc;
            }
        }
    }
    return rw;
}

double extinction_constant(const Grid1D& grid, const Kernel& kernel, int dimension) {
    const RadialWeights rw = build_radial_weights(grid, kernel, dimension);
    const int n = grid.n_points;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = rw.angular.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double s = grid.x(j);
            acc += rw.s_weight[j] * (1.0 - s * s) * row[j];
        }
        best = std::max(best, acc);
    }
    return best;
}

Field step(const Field& state, double t, const ProblemSpec& spec) {
    spec.validate();
    if (!(state.grid == spec.grid)) throw ArgumentError("step: state must live on the problem grid");
    if (spec.mode == DomainMode::radial) {
        const RadialWeights rw = build_radial_weights(spec.grid, spec.kernel, spec.dimension);
        return euler_update(state, t, spec, nonlocal_term(state, spec, &rw));
    }
    return euler_update(state, t, spec, nonlocal_term(state, spec, nullptr));
}

Trajectory simulate(const ProblemSpec& spec) { return run(spec, false); }

Trajectory simulate_frozen(const ProblemSpec& spec) { return run(spec, true); }

OrderingReport ordering_check(const ProblemSpec& lower, const ProblemSpec& upper) {
    if (!(lower.grid == upper.grid)) throw ArgumentError("ordering_check: grids must match");
    if (lower.mode != upper.mode || lower.dimension != upper.dimension || lower.c != upper.c ||
        lower.Theta != upper.Theta || lower.dt != upper.dt || lower.t_end != upper.t_end ||
        !(lower.kernel == upper.kernel))
        throw ArgumentError("ordering_check: specs may differ only in initial/boundary data");
    lower.validate();
    upper.validate();

    const int n = lower.grid.n_points;
    const double h = lower.grid.h();
    OrderingReport rep;
    rep.tolerance = 1e-8 + 10.0 * h * h;

    RadialWeights rw;
    const RadialWeights* rwp = nullptr;
    if (lower.mode == DomainMode::radial) {
        rw = build_radial_weights(lower.grid, lower.kernel, lower.dimension);
        rwp = &rw;
    }

    Field u = lower.initial;
    Field v = upper.initial;
    for (int i = 0; i < n; ++i) {
        if (u[i] > v[i]) rep.initial_ordered = false;
        rep.max_violation = std::max(rep.max_violation, u[i] - v[i]);
    }

    const long long n_steps = step_count(lower.t_end, lower.dt);
    for (long long k = 1; k <= n_steps; ++k) {
        const double t_prev = static_cast<double>(k - 1) * lower.dt;
        const double t_now = static_cast<double>(k) * lower.dt;
        u = euler_update(u, t_prev, lower, nonlocal_term(u, lower, rwp));
        v = euler_update(v, t_prev, upper, nonlocal_term(v, upper, rwp));
        if (lower.boundary(t_now) > upper.boundary(t_now)) rep.boundary_ordered = false;
        for (int i = 0; i < n; ++i) rep.max_violation = std::max(rep.max_violation, u[i] - v[i]);
        if (!u.all_finite() || !v.all_finite())
            throw NumericalFailure("ordering_check: non-finite state during lockstep run");
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    rep.pass = rep.initial_ordered && rep.boundary_ordered && rep.max_violation <= rep.tolerance;
    return rep;
}

}  // namespace pyrofront
