#include "pyrofront/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "pyrofront/csv.hpp"
#include "pyrofront/numerics.hpp"
#include "pyrofront/stability.hpp"
#include "pyrofront/waves.hpp"

namespace pyrofront {

namespace {

constexpr double kPi = std::numbers::pi;

struct Ctx {
    std::map<std::string, double> params;
    std::string out_dir;

    double get(const std::string& name) const { return params.at(name); }
    int get_int(const std::string& name) const {
        return static_cast<int>(std::llround(params.at(name)));
    }
    bool emit() const { return !out_dir.empty(); }
    std::string path(const std::string& file) const {
        return join_path(out_dir, file);
    }
};

using ScenarioFn = void (*)(const Ctx&, ScenarioReport&);

struct ScenarioDef {
    const char* id;
    const char* tag;
    const char* claim;
    std::map<std::string, double> defaults;
    ScenarioFn fn;
};

double sup_field(const Field& f) {
    double s = f[0];
    for (int i = 1; i < f.size(); ++i) s = std::max(s, f[i]);
    return s;
}

bool all_at_most(const std::map<std::string, double>& measured,
                 const std::map<std::string, double>& threshold,
                 const std::string& key) {
    return measured.at(key) <= threshold.at(key);
}

// ---------------------------------------------------------------- presets

ProblemSpec interval_base() {
    ProblemSpec spec;
    spec.mode = DomainMode::interval;
    spec.c = 1.0;
    spec.Theta = 0.3;
    spec.kernel = make_step(1.0, 0.1);
    spec.grid = Grid1D{0.0, 1.0, 101};
    spec.dt = 5e-5;
    spec.t_end = 0.15;
    return spec;
}

}  // namespace

ProblemSpec preset_problem(const std::string& name) {
    if (name == "frozen_a") {
        ProblemSpec spec = interval_base();
        spec.Theta = 0.5;
        spec.kernel = make_step(1.0, 0.2);
        spec.t_end = 0.5;
        spec.boundary = [](double) { return 0.5; };
        spec.initial = sample(spec.grid, [](double x) {
            return 0.5 + 0.4 * std::sin(kPi * x);
        });
        return spec;
    }
    if (name == "frozen_b") {
        ProblemSpec spec;
        spec.mode = DomainMode::radial;
        spec.dimension = 1;
        spec.c = 0.5;
        spec.Theta = 1.0;
        // kernel mass 0.5 keeps the admissible comparison horizon at 1,
        // long enough for the gap to settle into its linear-growth regime
        spec.kernel = make_step(1.0, 0.25);
        spec.grid = Grid1D{0.0, 1.0, 101};
        spec.dt = 1e-4;
        spec.t_end = 0.2;
        spec.boundary = [](double) { return 0.0; };
        spec.initial = sample(spec.grid, [](double r) {
            return 1.5 * (1.0 - r * r);
        });
        return spec;
    }
    if (name == "invasion") {
        ProblemSpec spec;
        spec.mode = DomainMode::radial;
        spec.dimension = 1;
        spec.c = 0.01;
        spec.Theta = 1.0;
        spec.kernel = make_step(1.0, 0.5);
        spec.grid = Grid1D{0.0, 1.0, 101};
        spec.dt = 5e-3;
        spec.t_end = 5.0;
        spec.boundary = [](double) { return 0.0; };
        spec.initial = sample(spec.grid, [](double r) {
            return 2.0 * (1.0 - r * r);
        });
        return spec;
    }
    if (name == "extinction") {
        ProblemSpec spec;
        spec.mode = DomainMode::radial;
        spec.dimension = 1;
        spec.Theta = 1.0;
        spec.kernel = make_step(1.0, 0.5);
        spec.grid = Grid1D{0.0, 1.0, 101};
        const double C = extinction_constant(spec.grid, spec.kernel, 1);
        spec.c = 1.5 * C / 2.0;
        spec.dt = 7e-5;
        spec.t_end = 5.0;
        spec.boundary = [](double) { return 0.0; };
        spec.initial = sample(spec.grid, [](double r) {
            return 1.2 * (1.0 - r * r);
        });
        return spec;
    }
    if (name == "boundary_ignition") {
        ProblemSpec spec;
        spec.mode = DomainMode::radial;
        spec.dimension = 1;
        spec.c = 1.0;
        spec.Theta = 1.0;
        spec.kernel = make_step(1.0, 0.5);
        spec.grid = Grid1D{0.0, 1.0, 101};
        spec.dt = 5e-5;
        spec.t_end = 0.25;
        spec.boundary = [](double) { return 2.0; };
        spec.initial = sample(spec.grid, [](double r) {
            return 2.0 - 1.5 * (1.0 - r * r);
        });
        return spec;
    }
    if (name == "necessity") {
        ProblemSpec spec = interval_base();
        spec.boundary = [](double) { return 0.0; };
        spec.initial = sample(spec.grid, [](double x) {
            return -0.2 * std::sin(kPi * x);
        });
        return spec;
    }
    throw ArgumentError("unknown preset: " + name);
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw ArgumentError("fitted_slope: need at least two (x, y) pairs");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    if (den == 0.0) throw ArgumentError("fitted_slope: xs are all equal");
    return num / den;
}

namespace {

// ------------------------------------------------------------- scenarios

void scenario_comparison(const Ctx& ctx, ScenarioReport& rep) {
    const int pairs = ctx.get_int("pairs");
    ProblemSpec base = interval_base();
    base.grid = Grid1D{0.0, 1.0, ctx.get_int("n_points")};
    base.dt = ctx.get("dt");
    base.t_end = ctx.get("t_end");
    const int seed = ctx.get_int("seed");

    double max_violation = 0.0;
    bool data_ordered = true;
    std::vector<std::string> rows;
    for (int k = 0; k < pairs; ++k) {
        std::mt19937 rng(static_cast<unsigned>(seed + k));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> amp(-0.5, 0.5);
        const double level = unit(rng);
        std::vector<double> coeff(5);
        for (auto& a : coeff) a = amp(rng);

        ProblemSpec upper = base;
        upper.boundary = [level](double) { return level; };
        upper.initial = sample(base.grid, [&](double x) {
            double v = level;
            for (int j = 0; j < 5; ++j)
                v += coeff[j] * std::sin((j + 1) * kPi * x);
            return v;
        });

        ProblemSpec lower = upper;
        lower.boundary = [level](double) { return level - 0.1; };
        lower.initial = upper.initial;
        for (int i = 0; i < lower.initial.size(); ++i)
            lower.initial[i] -= 0.1;

        const OrderingReport result = ordering_check(lower, upper);
        max_violation = std::max(max_violation, result.max_violation);
        data_ordered =
            data_ordered && result.initial_ordered && result.boundary_ordered;
        rows.push_back(std::to_string(k) + "," +
                       format_real(result.max_violation));
    }

    rep.measured["max_violation"] = max_violation;
    rep.measured["data_ordered"] = data_ordered ? 1.0 : 0.0;
    rep.threshold["max_violation"] = ctx.get("violation_tolerance");
    rep.threshold["data_ordered"] = 1.0;
    rep.pass = data_ordered && all_at_most(rep.measured, rep.threshold, "max_violation");
    if (ctx.emit())
        write_csv(ctx.path("comparison_ordering.csv"), "pair,violation", rows);
}

void scenario_necessity(const Ctx& ctx, ScenarioReport& rep) {
    ProblemSpec sub = preset_problem("necessity");
    sub.t_end = ctx.get("t_end");

    ProblemSpec super = sub;
    const double theta = sub.Theta;
    super.boundary = [theta](double) { return theta; };
    super.initial = sample(sub.grid, [theta](double) { return theta; });

    const OrderingReport result = ordering_check(sub, super);
    const Trajectory trajectory = simulate(sub);
    const double final_sup = sup_field(trajectory.final_state());

    rep.measured["max_violation"] = result.max_violation;
    rep.measured["final_sup_minus_theta"] = final_sup - theta;
    rep.threshold["max_violation"] = ctx.get("violation_tolerance");
    rep.threshold["final_sup_minus_theta"] = 0.0;
    rep.pass = result.initial_ordered && result.boundary_ordered &&
               all_at_most(rep.measured, rep.threshold, "max_violation") &&
               all_at_most(rep.measured, rep.threshold, "final_sup_minus_theta");
    if (ctx.emit())
        write_trajectory_csv(ctx.path("necessity_of_ignition.csv"), trajectory);
}

void scenario_invasion(const Ctx& ctx, ScenarioReport& rep) {
    ProblemSpec spec = preset_problem("invasion");
    spec.c = ctx.get("c");
    spec.dt = ctx.get("dt");
    spec.t_end = ctx.get("t_end");
    const double lambda0 = 2.0;

    const Trajectory trajectory = simulate(spec);

    std::vector<double> ts, log_center, ratios;
    std::vector<std::string> rows;
    for (const auto& [t, state] : trajectory.snapshots) {
        double min_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i + 1 < state.size(); ++i) {
            const double r = state.grid.x(i);
            min_ratio = std::min(min_ratio,
                                 state[i] / (lambda0 * (1.0 - r * r)));
        }
        ratios.push_back(min_ratio);
        if (t >= 1.0) {
            ts.push_back(t);
            log_center.push_back(std::log(state[0]));
        }
        rows.push_back(format_real(t) + "," + format_real(state[0]) + "," +
                       format_real(min_ratio));
    }

    double max_drop = 0.0;
    for (size_t k = 0; k + 1 < ratios.size(); ++k)
        max_drop = std::max(max_drop, ratios[k] - ratios[k + 1]);

    rep.measured["fitted_alpha"] = fitted_slope(ts, log_center);
    rep.measured["ratio_drop"] = max_drop;
    rep.measured["final_center"] = trajectory.final_state()[0];
    rep.measured["blew_up"] = trajectory.blew_up ? 1.0 : 0.0;
    rep.threshold["fitted_alpha"] = ctx.get("alpha_min");
    rep.threshold["ratio_drop"] = ctx.get("ratio_drop_tolerance");
    rep.pass = !trajectory.blew_up &&
               rep.measured["fitted_alpha"] >= rep.threshold["fitted_alpha"] &&
               all_at_most(rep.measured, rep.threshold, "ratio_drop");
    if (ctx.emit())
        write_csv(ctx.path("invasion.csv"), "t,u_center,min_ratio", rows);
}

void scenario_extinction(const Ctx& ctx, ScenarioReport& rep) {
    ProblemSpec spec = preset_problem("extinction");
    spec.dt = ctx.get("dt");
    spec.t_end = ctx.get("t_end");
    const double C = extinction_constant(spec.grid, spec.kernel, spec.dimension);
    const double required =
        ctx.get("rate_fraction") * (2.0 * spec.dimension * spec.c - C);

    const Trajectory trajectory = simulate(spec);

    std::vector<double> ts, log_sup;
    std::vector<std::string> rows;
    for (const auto& [t, state] : trajectory.snapshots) {
        const double sup = sup_field(state);
        if (t >= 1.0 && sup > 0.0) {
            ts.push_back(t);
            log_sup.push_back(std::log(sup));
        }
        rows.push_back(format_real(t) + "," + format_real(sup));
    }

    rep.measured["decay_rate"] = -fitted_slope(ts, log_sup);
    rep.measured["final_sup"] = sup_field(trajectory.final_state());
    rep.measured["constant"] = C;
    rep.threshold["decay_rate"] = required;
    rep.threshold["final_sup"] = spec.Theta;
    rep.pass = rep.measured["decay_rate"] >= required &&
               rep.measured["final_sup"] < spec.Theta;
    if (ctx.emit()) write_csv(ctx.path("extinction.csv"), "t,sup_u", rows);
}

void scenario_boundary_ignition(const Ctx& ctx, ScenarioReport& rep) {
    ProblemSpec spec = preset_problem("boundary_ignition");
    spec.dt = ctx.get("dt");
    const double theta_bar = 2.0, theta = 1.0, beta = 1.5;
    const double alpha =
        2.0 * spec.dimension * spec.c * (theta_bar - theta);
    const double t_star = (beta - (theta_bar - theta)) / alpha;
    spec.t_end = t_star;
    const double h = spec.grid.h();

    const Trajectory trajectory = simulate(spec);

    double max_bound_violation = 0.0;
    for (const auto& [t, state] : trajectory.snapshots) {
        const double slope = beta - alpha * t;
        for (int i = 0; i < state.size(); ++i) {
            const double r = state.grid.x(i);
            const double floor_value = theta_bar - slope * (1.0 - r * r);
            max_bound_violation =
                std::max(max_bound_violation, floor_value - state[i]);
        }
    }

    double min_final = trajectory.final_state()[0];
    for (int i = 0; i < trajectory.final_state().size(); ++i)
        min_final = std::min(min_final, trajectory.final_state()[i]);

    rep.measured["min_at_tstar"] = min_final;
    rep.measured["max_bound_violation"] = max_bound_violation;
    rep.measured["t_star"] = t_star;
    rep.threshold["min_at_tstar"] = theta - 10.0 * h * h;
    rep.threshold["max_bound_violation"] = 10.0 * h * h;
    rep.pass = min_final >= rep.threshold["min_at_tstar"] &&
               all_at_most(rep.measured, rep.threshold, "max_bound_violation");
    if (ctx.emit())
        write_trajectory_csv(ctx.path("boundary_ignition.csv"), trajectory);
}

double frozen_gap(const ProblemSpec& base, double horizon) {
    ProblemSpec spec = base;
    spec.t_end = horizon;
    spec.snapshot_stride = 0;
    const Trajectory live = simulate(spec);
    const Trajectory frozen = simulate_frozen(spec);
    if (live.snapshots.size() != frozen.snapshots.size())
        throw NumericalFailure("frozen comparison produced mismatched snapshots");
    double gap = 0.0;
    for (size_t k = 0; k < live.snapshots.size(); ++k) {
        const Field& a = live.snapshots[k].second;
        const Field& b = frozen.snapshots[k].second;
        for (int i = 0; i < a.size(); ++i)
            gap = std::max(gap, std::abs(a[i] - b[i]));
    }
    return gap;
}

void scenario_frozen(const Ctx& ctx, ScenarioReport& rep) {
    std::vector<std::string> rows;
    const char* names[2] = {"frozen_a", "frozen_b"};
    const char* keys[2] = {"horizon_a", "horizon_b"};
    const char* ratio_keys[2] = {"ratio_a", "ratio_b"};
    bool admissible = true;
    for (int p = 0; p < 2; ++p) {
        const ProblemSpec base = preset_problem(names[p]);
        const double horizon = ctx.get(keys[p]);
        // admissible horizon: min over the statement and proof forms of the
        // reciprocal burning-rate bound, with S_r bounded by r * kernel mass
        const double s_theta_plus1 = base.kernel.mass();
        const double t_max = std::min(1.0, 1.0 / (2.0 * s_theta_plus1));
        admissible = admissible && horizon <= t_max;
        const double err_full = frozen_gap(base, horizon);
        const double err_half = frozen_gap(base, 0.5 * horizon);
        rep.measured[std::string("error_full_") + names[p][7]] = err_full;
        rep.measured[std::string("error_half_") + names[p][7]] = err_half;
        rep.measured[ratio_keys[p]] = err_full / err_half;
        rows.push_back(std::string(names[p]) + "," + format_real(horizon) +
                       "," + format_real(err_full));
        rows.push_back(std::string(names[p]) + "," +
                       format_real(0.5 * horizon) + "," + format_real(err_half));
    }
    rep.measured["horizons_admissible"] = admissible ? 1.0 : 0.0;
    rep.threshold["ratio_min"] = ctx.get("ratio_min");
    rep.threshold["ratio_max"] = ctx.get("ratio_max");
    rep.pass = admissible;
    for (const char* key : ratio_keys) {
        const double ratio = rep.measured[key];
        rep.pass = rep.pass && ratio >= rep.threshold["ratio_min"] &&
                   ratio <= rep.threshold["ratio_max"];
    }
    if (ctx.emit())
        write_csv(ctx.path("frozen_convolution_error.csv"),
                  "preset,horizon,error", rows);
}

WaveParams standard_wave(double omega, double lambda, double radius,
                         double x_target, int n_points,
                         ContractionRoute route) {
    WaveParams params;
    params.omega = omega;
    params.kappa = 1.0;
    params.c = 1.0;
    params.kernel = make_step(lambda, radius);
    params.grid = wave_grid(radius, x_target, n_points);
    params.route = route;
    return params;
}

void scenario_wave_convergence(const Ctx& ctx, ScenarioReport& rep) {
    WaveParams params = standard_wave(
        ctx.get("omega"), ctx.get("lambda"), ctx.get("radius"),
        ctx.get("x_max"), ctx.get_int("n_points"),
        ContractionRoute::kernel_weighted);
    params.tol = ctx.get("tol");
    params.max_iter = ctx.get_int("max_iter");
    const WaveProfile profile = solve(params);

    const double delta_target = ctx.get("delta_target");
    int reach = -1;
    for (size_t k = 0; k < profile.iteration.weighted_deltas.size(); ++k) {
        if (profile.iteration.weighted_deltas[k] < delta_target) {
            reach = static_cast<int>(k) + 1;
            break;
        }
    }
    const int i0 = params.grid.index_of(0.0);

    rep.measured["iterations_to_target"] = reach;
    rep.measured["residual_sup"] = profile.iteration.residual_sup;
    rep.measured["anchor_v"] = std::abs(profile.v[i0]);
    rep.measured["anchor_w"] = std::abs(profile.w[i0] - params.kappa);
    rep.measured["converged"] = profile.iteration.converged ? 1.0 : 0.0;
    rep.threshold["iterations_to_target"] = ctx.get("iteration_limit");
    rep.threshold["residual_sup"] = ctx.get("residual_factor") * params.grid.h();
    rep.threshold["anchor_v"] = 1e-10;
    rep.threshold["anchor_w"] = 1e-10;
    rep.pass = profile.iteration.converged && reach > 0 &&
               all_at_most(rep.measured, rep.threshold, "iterations_to_target") &&
               all_at_most(rep.measured, rep.threshold, "residual_sup") &&
               all_at_most(rep.measured, rep.threshold, "anchor_v") &&
               all_at_most(rep.measured, rep.threshold, "anchor_w");
    if (ctx.emit())
        write_wave_csv(ctx.path("wave_convergence_omega3.csv"), profile, true);
}

void idealized_comparison(const Ctx& ctx, ScenarioReport& rep, double omega,
                          const std::string& csv_name, bool check_sign_change) {
    const double x_target = check_sign_change ? 3.0 * kPi : 1.0;
    WaveParams params = standard_wave(
        omega, ctx.get("lambda"), ctx.get("radius"), x_target,
        ctx.get_int("n_points"),
        check_sign_change ? ContractionRoute::speed_weighted
                          : ContractionRoute::kernel_weighted);
    const WaveProfile profile = solve(params);

    double sup_rel_positive = 0.0;
    double sup_rel_two_sided = 0.0;
    const int probes = 1001;
    for (int j = 0; j < probes; ++j) {
        const double x = -1.0 + 2.0 * j / (probes - 1);
        const double ideal = idealized_wave(omega, x);
        if (std::abs(ideal) <= 0.01) continue;
        const double rel =
            std::abs(evaluate(profile, x) - ideal) / std::abs(ideal);
        sup_rel_two_sided = std::max(sup_rel_two_sided, rel);
        if (ideal > 0.01) sup_rel_positive = std::max(sup_rel_positive, rel);
    }

    rep.measured["sup_rel_error_positive"] = sup_rel_positive;
    rep.measured["sup_rel_error_two_sided"] = sup_rel_two_sided;
    rep.measured["converged"] = profile.iteration.converged ? 1.0 : 0.0;
    rep.threshold["sup_rel_error_positive"] = ctx.get("rel_error_max");
    rep.pass = profile.iteration.converged &&
               all_at_most(rep.measured, rep.threshold, "sup_rel_error_positive");

    if (check_sign_change) {
        double sign_change_x = -1.0;
        bool seen_positive = false;
        const Grid1D& grid = profile.v.grid;
        for (int i = 0; i < grid.n_points; ++i) {
            const double x = grid.x(i);
            if (x <= 0.0 || x >= 3.0 * kPi) continue;
            if (profile.v[i] > 0.0 && sign_change_x < 0.0) seen_positive = true;
            if (seen_positive && profile.v[i] < 0.0) {
                sign_change_x = x;
                break;
            }
        }
        rep.measured["sign_change_x"] = sign_change_x;
        rep.threshold["sign_change_upper"] = 3.0 * kPi;
        rep.pass = rep.pass && sign_change_x > 0.0 &&
                   sign_change_x < rep.threshold["sign_change_upper"];
    }
    if (ctx.emit()) write_wave_csv(ctx.path(csv_name), profile, true);
}

void scenario_idealized_3(const Ctx& ctx, ScenarioReport& rep) {
    idealized_comparison(ctx, rep, 3.0, "wave_vs_idealized_3.csv", false);
}
void scenario_idealized_2(const Ctx& ctx, ScenarioReport& rep) {
    idealized_comparison(ctx, rep, 2.0, "wave_vs_idealized_2.csv", false);
}
void scenario_idealized_sqrt3(const Ctx& ctx, ScenarioReport& rep) {
    idealized_comparison(ctx, rep, std::sqrt(3.0), "wave_vs_idealized_sqrt3.csv",
                         true);
}

void scenario_exponential_bounds(const Ctx& ctx, ScenarioReport& rep) {
    struct Entry {
        const char* name;
        WaveParams params;
    };
    std::vector<Entry> entries;
    entries.push_back({"omega3", standard_wave(3.0, 10.0, 0.05, 1.0, 20001,
                                               ContractionRoute::kernel_weighted)});
    entries.push_back({"omega2", standard_wave(2.0, 10.0, 0.05, 1.0, 20001,
                                               ContractionRoute::kernel_weighted)});
    entries.push_back({"gentle", standard_wave(1.0, 0.1, 0.5, 4.0, 10001,
                                               ContractionRoute::kernel_weighted)});
    WaveParams heat;
    heat.omega = 1.0;
    heat.kernel = make_zero();
    heat.grid = wave_grid(heat.kernel.R, 2.0, 4001);
    entries.push_back({"heat_control", heat});

    double max_ratio = 0.0;
    double zero_equality_error = 0.0;
    double ratio_omega3 = 0.0;
    bool all_converged = true;
    std::vector<std::string> rows;
    for (const auto& entry : entries) {
        const WaveProfile profile = solve(entry.params);
        all_converged = all_converged && profile.iteration.converged;
        const ExponentialBoundReport bounds = check_exponential_bounds(profile);
        const double worst =
            std::max(bounds.max_lower_violation, bounds.max_upper_violation);
        max_ratio = std::max(max_ratio, worst / bounds.tolerance);
        if (std::string(entry.name) == "omega3")
            ratio_omega3 = bounds.ratio_at_xmax;
        if (std::string(entry.name) == "heat_control") {
            const Grid1D& grid = profile.v.grid;
            for (int i = 0; i < grid.n_points; ++i) {
                const double envelope =
                    entry.params.kappa * std::exp(entry.params.omega * grid.x(i));
                zero_equality_error = std::max(
                    zero_equality_error, std::abs(profile.w[i] - envelope));
            }
        }
        rows.push_back(std::string(entry.name) + "," +
                       format_real(bounds.max_lower_violation) + "," +
                       format_real(bounds.max_upper_violation) + "," +
                       format_real(bounds.tolerance) + "," +
                       format_real(bounds.ratio_at_xmax));
    }

    rep.measured["max_violation_ratio"] = max_ratio;
    rep.measured["zero_equality_error"] = zero_equality_error;
    rep.measured["ratio_omega3"] = ratio_omega3;
    rep.measured["all_converged"] = all_converged ? 1.0 : 0.0;
    rep.threshold["max_violation_ratio"] = 1.0;
    rep.threshold["zero_equality_error"] = ctx.get("zero_equality_tolerance");
    rep.threshold["ratio_omega3"] = 1.0;  // kappa
    rep.pass = all_converged &&
               all_at_most(rep.measured, rep.threshold, "max_violation_ratio") &&
               all_at_most(rep.measured, rep.threshold, "zero_equality_error") &&
               ratio_omega3 < 1.0;
    if (ctx.emit())
        write_csv(ctx.path("exponential_bounds.csv"),
                  "name,lower_violation,upper_violation,tolerance,ratio_at_xmax",
                  rows);
}

void scenario_monotonicity(const Ctx& ctx, ScenarioReport& rep) {
    WaveParams params = standard_wave(1.0, ctx.get("lambda"), ctx.get("radius"),
                                      ctx.get("x_max"), ctx.get_int("n_points"),
                                      ContractionRoute::kernel_weighted);
    const WaveProfile profile = solve(params);
    const MonotonicityReport result = monotonicity_analysis(profile);

    rep.measured["L"] = result.L;
    rep.measured["L_error"] = std::abs(result.L - ctx.get("expected_L"));
    rep.measured["precondition_value"] = result.precondition_value;
    rep.measured["min_w"] = result.min_w;
    rep.measured["closed_form_available"] =
        result.closed_form_available ? 1.0 : 0.0;
    rep.measured["positive_up_to_L"] = result.positive_up_to_L ? 1.0 : 0.0;
    rep.threshold["L_error"] = ctx.get("L_tolerance");
    rep.pass = profile.iteration.converged && result.closed_form_available &&
               result.positive_up_to_L &&
               all_at_most(rep.measured, rep.threshold, "L_error");
    if (ctx.emit())
        write_wave_csv(ctx.path("monotonicity_L.csv"), profile, true);
}

void scenario_nonmonotone(const Ctx& ctx, ScenarioReport& rep) {
    const std::vector<double> omegas = {1.0,      0.5,      0.25,
                                        0.125,    0.0625,   0.03125};
    double largest_negative = -1.0;
    int negative_count = 0;
    bool all_converged = true;
    std::vector<std::string> rows;
    for (const double omega : omegas) {
        WaveParams params = standard_wave(
            omega, ctx.get("lambda"), ctx.get("radius"), ctx.get("x_max"),
            ctx.get_int("n_points"), ContractionRoute::speed_weighted);
        const WaveProfile profile = solve(params);
        all_converged = all_converged && profile.iteration.converged;
        const MonotonicityReport result = monotonicity_analysis(profile);
        const bool negative = result.first_negative_index >= 0;
        if (negative) {
            ++negative_count;
            largest_negative = std::max(largest_negative, omega);
        }
        rows.push_back(format_real(omega) + "," +
                       format_flag(profile.iteration.converged) + "," +
                       format_real(result.min_w) + "," +
                       (negative ? format_real(result.first_negative_x)
                                 : std::string("none")));
    }

    rep.measured["negative_count"] = negative_count;
    rep.measured["largest_negative_omega"] = largest_negative;
    rep.measured["all_converged"] = all_converged ? 1.0 : 0.0;
    rep.threshold["negative_count_min"] = 1.0;
    rep.pass = all_converged && negative_count >= 1;
    if (ctx.emit())
        write_csv(ctx.path("nonmonotone_small_omega.csv"),
                  "omega,converged,min_w,first_negative_x", rows);
}

void scenario_divergence(const Ctx& ctx, ScenarioReport& rep) {
    WaveParams params = standard_wave(3.0, ctx.get("lambda"), ctx.get("radius"),
                                      2.0, ctx.get_int("n_points"),
                                      ContractionRoute::speed_weighted);
    const WaveProfile profile = solve(params);
    const DivergenceReport probe = divergence_probe(profile);

    WaveParams heat;
    heat.omega = 1.0;
    heat.kernel = make_zero();
    heat.grid = wave_grid(heat.kernel.R, 5.2, 6001);
    const WaveProfile heat_profile = solve(heat);
    const DivergenceReport heat_probe = divergence_probe(heat_profile);
    const double zero_left_error =
        std::abs(heat_probe.left_limit - (-heat.kappa / heat.omega));

    WaveProfile flat;
    flat.params = heat;
    flat.v = Field(heat.grid);
    flat.w = Field(heat.grid);
    const DivergenceReport flat_probe = divergence_probe(flat);

    rep.measured["v_at_xmax"] = probe.v_at_xmax;
    rep.measured["left_limit"] = probe.left_limit;
    rep.measured["probe_pass"] = probe.pass ? 1.0 : 0.0;
    rep.measured["heat_probe_pass"] = heat_probe.pass ? 1.0 : 0.0;
    rep.measured["zero_left_error"] = zero_left_error;
    rep.measured["degenerate_flagged"] = flat_probe.degenerate_constant ? 1.0 : 0.0;
    rep.threshold["zero_left_error"] = ctx.get("zero_left_tolerance");
    rep.threshold["left_limit_max"] = 0.0;
    rep.pass = probe.pass && heat_probe.pass && probe.left_limit <= 0.0 &&
               flat_probe.degenerate_constant && !flat_probe.pass &&
               all_at_most(rep.measured, rep.threshold, "zero_left_error");
    if (ctx.emit()) {
        std::vector<std::string> rows;
        const auto row = [](const char* name, const DivergenceReport& r) {
            return std::string(name) + "," + format_real(r.v_at_xmax) + "," +
                   format_real(r.left_limit) + "," + format_flag(r.increasing_tail) +
                   "," + format_flag(r.exceeds_threshold) + "," +
                   format_flag(r.degenerate_constant) + "," + format_flag(r.pass);
        };
        rows.push_back(row("omega3", probe));
        rows.push_back(row("heat_control", heat_probe));
        rows.push_back(row("flat_zero", flat_probe));
        write_csv(ctx.path("divergence_sides.csv"),
                  "name,v_at_xmax,left_limit,increasing_tail,exceeds_threshold,"
                  "degenerate,pass",
                  rows);
    }
}

void scenario_instability(const Ctx& ctx, ScenarioReport& rep) {
    WaveParams params = standard_wave(
        ctx.get("omega"), ctx.get("lambda"), ctx.get("radius"), 1.0,
        ctx.get_int("n_points"), ContractionRoute::kernel_weighted);
    const WaveProfile profile = solve(params);
    const double c = 1.0;
    const double epsilon = ctx.get("epsilon");
    const InstabilityWitness witness = instability_witness(
        profile, params.kernel, c, epsilon, ctx.get("witness_h"));
    const double q =
        stability_form(profile, witness.perturbation, c, params.kernel);

    rep.measured["Q"] = q;
    rep.measured["predicted_margin"] = witness.predicted_margin;
    rep.measured["mu"] = witness.mu;
    rep.measured["M"] = witness.M;
    rep.threshold["q_min"] = 0.5 * witness.predicted_margin;
    rep.pass = profile.iteration.converged && witness.predicted_margin > 0.0 &&
               q >= rep.threshold["q_min"];
    if (ctx.emit()) {
        SmallSupportReport entry;
        entry.sigma = witness.perturbation.support_length();
        entry.bound = std::cbrt(2.0 * c / params.kernel.Lambda);
        entry.Q = q;
        entry.pass = rep.pass;
        write_stability_csv(ctx.path("instability_witness.csv"),
                            {{"plateau_witness", entry}});
    }
}

void scenario_small_support(const Ctx& ctx, ScenarioReport& rep) {
    WaveParams params = standard_wave(
        ctx.get("omega"), ctx.get("lambda"), ctx.get("radius"), 1.0,
        ctx.get_int("n_points"), ContractionRoute::kernel_weighted);
    const WaveProfile profile = solve(params);
    const double c = 1.0;
    const int seeds = ctx.get_int("seeds");
    const double support = ctx.get("support_length");
    const double h = 0.0125;

    double max_q = -std::numeric_limits<double>::infinity();
    bool all_ok = true;
    std::vector<std::pair<std::string, SmallSupportReport>> rows;
    for (int k = 0; k < seeds; ++k) {
        std::mt19937 rng(static_cast<unsigned>(7000 + k));
        std::uniform_int_distribution<int> offset(0, 64);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        const double a = -0.5 + h * offset(rng);
        std::vector<double> coeff(4);
        for (auto& value : coeff) value = amp(rng);

        Grid1D grid{a - 0.2, a + 0.7, 73};
        Field phi(grid);
        for (int i = 0; i < grid.n_points; ++i) {
            const double x = grid.x(i);
            if (x <= a + 1e-15 || x >= a + support - 1e-15) continue;
            double value = 0.0;
            for (int j = 0; j < 4; ++j)
                value += coeff[j] * std::sin((j + 1) * kPi * (x - a) / support);
            phi[i] = value;
        }
        const Perturbation perturbation = Perturbation::from_field(phi);
        const SmallSupportReport result =
            small_support_check(profile, perturbation, c, params.kernel);
        max_q = std::max(max_q, result.Q);
        all_ok = all_ok && result.precondition_met && result.pass;
        rows.emplace_back("seed_" + std::to_string(k), result);
    }

    // zero perturbation: the form vanishes identically
    Grid1D zero_grid{-0.5, 0.5, 81};
    const Perturbation zero_phi = Perturbation::from_field(Field(zero_grid));
    const SmallSupportReport zero_result =
        small_support_check(profile, zero_phi, c, params.kernel);
    rows.emplace_back("zero", zero_result);

    const double bound_c2_error = std::abs(std::cbrt(2.0 * 2.0 / 2.0) -
                                           1.2599210498948732);

    rep.measured["max_Q"] = max_q;
    rep.measured["zero_Q"] = zero_result.Q;
    rep.measured["bound_c2_error"] = bound_c2_error;
    rep.measured["seeds_run"] = seeds;
    rep.threshold["max_Q"] = ctx.get("q_tolerance");
    rep.threshold["zero_Q"] = 0.0;
    rep.threshold["bound_c2_error"] = 1e-12;
    rep.pass = all_ok && zero_result.pass &&
               all_at_most(rep.measured, rep.threshold, "max_Q") &&
               all_at_most(rep.measured, rep.threshold, "zero_Q") &&
               all_at_most(rep.measured, rep.threshold, "bound_c2_error");
    if (ctx.emit())
        write_stability_csv(ctx.path("small_support_stability.csv"), rows);
}

void scenario_figure_fixture(const Ctx& ctx, ScenarioReport& rep) {
    const std::vector<double> times = {-0.9, -0.5, 0.0, 0.5, 0.9};
    const int nx = 301;
    double max_error = 0.0;
    std::vector<std::string> rows;
    for (const double t : times) {
        for (int j = 0; j < nx; ++j) {
            const double x = -3.0 + 3.0 * j / (nx - 1);
            const double ratio = x / (1.0 - t);
            const double u = 1.0 - std::exp(ratio);
            const double alt = -std::expm1(ratio);
            max_error = std::max(max_error, std::abs(u - alt));
            rows.push_back(format_real(t) + "," + format_real(x) + "," +
                           format_real(u));
        }
    }
    rep.measured["max_identity_error"] = max_error;
    rep.threshold["max_identity_error"] = ctx.get("identity_tolerance");
    rep.pass = all_at_most(rep.measured, rep.threshold, "max_identity_error");
    if (ctx.emit())
        write_csv(ctx.path("figure_fighss_fixture.csv"), "t,x,u", rows);
}

// ------------------------------------------------------------- registry

const std::vector<ScenarioDef>& registry() {
    static const std::vector<ScenarioDef> defs = {
        {"boundary_ignition", "pde", "boundary-ignition-linear-bound",
         {{"dt", 5e-5}},
         scenario_boundary_ignition},
        {"comparison_ordering", "pde", "comparison-principle",
         {{"pairs", 100}, {"violation_tolerance", 1e-12}, {"n_points", 101},
          {"dt", 5e-5}, {"t_end", 0.15}, {"seed", 1000}},
         scenario_comparison},
        {"divergence_sides", "wave", "one-sided-divergence",
         {{"lambda", 10.0}, {"radius", 0.05}, {"n_points", 20001},
          {"zero_left_tolerance", 1e-5}},
         scenario_divergence},
        {"exponential_bounds", "wave", "wave-slope-exponential-envelope",
         {{"zero_equality_tolerance", 1e-10}},
         scenario_exponential_bounds},
        {"extinction", "pde", "extinction-exponential-decay",
         {{"dt", 7e-5}, {"t_end", 5.0}, {"rate_fraction", 0.9}},
         scenario_extinction},
        {"figure_fighss_fixture", "figure", "self-similar-heat-profile",
         {{"identity_tolerance", 1e-12}},
         scenario_figure_fixture},
        {"frozen_convolution_error", "pde", "frozen-convolution-linear-error",
         {{"horizon_a", 0.25}, {"horizon_b", 0.8}, {"ratio_min", 1.7},
          {"ratio_max", 2.3}},
         scenario_frozen},
        {"instability_witness", "stability", "plateau-instability-witness",
         {{"omega", 3.0}, {"lambda", 10.0}, {"radius", 0.05},
          {"n_points", 20001}, {"epsilon", 0.01}, {"witness_h", 0.025}},
         scenario_instability},
        {"invasion", "pde", "invasion-exponential-growth",
         {{"c", 0.01}, {"dt", 5e-3}, {"t_end", 5.0}, {"alpha_min", 0.05},
          {"ratio_drop_tolerance", 1e-12}},
         scenario_invasion},
        {"monotonicity_L", "wave", "monotone-interval-bound",
         {{"lambda", 0.1}, {"radius", 0.5}, {"x_max", 4.0}, {"n_points", 10001},
          {"expected_L", 2.3699999524743283}, {"L_tolerance", 1e-3}},
         scenario_monotonicity},
        {"necessity_of_ignition", "pde", "no-spontaneous-ignition",
         {{"violation_tolerance", 1e-12}, {"t_end", 0.15}},
         scenario_necessity},
        {"nonmonotone_small_omega", "wave", "nonmonotone-small-speed",
         {{"lambda", 1.0}, {"radius", 0.5}, {"x_max", 6.0}, {"n_points", 7001}},
         scenario_nonmonotone},
        {"small_support_stability", "stability", "small-support-stability",
         {{"omega", 3.0}, {"lambda", 10.0}, {"radius", 0.05},
          {"n_points", 20001}, {"seeds", 100}, {"support_length", 0.5},
          {"q_tolerance", 1e-10}},
         scenario_small_support},
        {"wave_convergence_omega3", "wave", "wave-fixed-point-convergence",
         {{"omega", 3.0}, {"lambda", 10.0}, {"radius", 0.05},
          {"n_points", 20001}, {"x_max", 1.0}, {"tol", 1e-12},
          {"max_iter", 60}, {"delta_target", 1e-8}, {"iteration_limit", 15},
          {"residual_factor", 50.0}},
         scenario_wave_convergence},
        {"wave_vs_idealized_2", "wave", "idealized-wave-agreement",
         {{"lambda", 10.0}, {"radius", 0.05}, {"n_points", 20001},
          {"rel_error_max", 0.05}},
         scenario_idealized_2},
        {"wave_vs_idealized_3", "wave", "idealized-wave-agreement",
         {{"lambda", 10.0}, {"radius", 0.05}, {"n_points", 20001},
          {"rel_error_max", 0.05}},
         scenario_idealized_3},
        {"wave_vs_idealized_sqrt3", "wave", "idealized-wave-agreement",
         {{"lambda", 10.0}, {"radius", 0.05}, {"n_points", 20001},
          {"rel_error_max", 0.05}},
         scenario_idealized_sqrt3},
    };
    return defs;
}

const ScenarioDef* find_scenario(const std::string& id) {
    for (const auto& def : registry())
        if (id == def.id) return &def;
    return nullptr;
}

}  // namespace

std::vector<std::string> scenario_ids() {
    std::vector<std::string> ids;
    for (const auto& def : registry()) ids.emplace_back(def.id);
    return ids;  // registry is kept sorted by id
}

std::string scenario_tag(const std::string& id) {
    const ScenarioDef* def = find_scenario(id);
    if (!def) throw ArgumentError("unknown scenario id: " + id);
    return def->tag;
}

std::string scenario_claim(const std::string& id) {
    const ScenarioDef* def = find_scenario(id);
    if (!def) throw ArgumentError("unknown scenario id: " + id);
    return def->claim;
}

ScenarioReport run_scenario(const std::string& id, const VerifyOptions& options) {
    const ScenarioDef* def = find_scenario(id);
    if (!def) throw ArgumentError("unknown scenario id: " + id);

    Ctx ctx;
    ctx.params = def->defaults;
    ctx.out_dir = options.out_dir;
    for (const auto& [key, value] : options.overrides) {
        const auto dot = key.find('.');
        if (dot == std::string::npos)
            throw ArgumentError("override key must be <scenario>.<param>: " + key);
        const std::string scenario = key.substr(0, dot);
        const std::string param = key.substr(dot + 1);
        if (scenario == id) {
            if (ctx.params.find(param) == ctx.params.end())
                throw ArgumentError("unknown override parameter for " + id +
                                    ": " + param);
            ctx.params[param] = value;
        } else if (!find_scenario(scenario)) {
            throw ArgumentError("override addresses unknown scenario: " + scenario);
        }
    }

    ScenarioReport report;
    report.scenario_id = id;
    report.claim_ref = def->claim;
    const auto start = std::chrono::steady_clock::now();
    def->fn(ctx, report);
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

std::vector<ScenarioReport> run_all(const std::string& tag,
                                    const VerifyOptions& options) {
    if (!tag.empty() && tag != "pde" && tag != "wave" && tag != "stability" &&
        tag != "figure")
        throw ArgumentError("unknown scenario tag: " + tag);

    std::vector<std::string> ids;
    for (const auto& def : registry())
        if (tag.empty() || tag == def.tag) ids.emplace_back(def.id);

    std::vector<ScenarioReport> reports(ids.size());
    unsigned workers = options.threads > 0
                           ? static_cast<unsigned>(options.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(ids.size()));
    workers = std::max(1u, workers);

    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                while (true) {
                    const size_t index = next.fetch_add(1);
                    if (index >= ids.size()) break;
                    reports[index] = run_scenario(ids[index], options);
                }
            } catch (...) {
                failures[w] = std::current_exception();
                next.store(ids.size());  // drain remaining work
            }
        });
    }
    for (auto& worker : pool) worker.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return reports;  // ids were collected in sorted registry order
}

void write_ledger_csv(const std::string& path,
                      const std::vector<ScenarioReport>& reports) {
    std::vector<std::string> rows;
    rows.reserve(reports.size());
    for (const auto& report : reports)
        rows.push_back(report.scenario_id + "," + report.claim_ref + "," +
                       format_flag(report.pass) + "," +
                       std::to_string(report.runtime_ms));
    write_csv(path, "scenario_id,claim_ref,pass,runtime_ms", rows);
}

}  // namespace pyrofront
