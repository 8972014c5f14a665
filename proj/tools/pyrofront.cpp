// Command-line front door: subcommands wrapping the evolution solver, the
// traveling-wave solver, the stability forms, and the scenario ledger.
// Exit codes: 0 success, 1 scenario failure, 2 usage error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pyrofront/csv.hpp"
#include "pyrofront/pde.hpp"
#include "pyrofront/stability.hpp"
#include "pyrofront/verify.hpp"
#include "pyrofront/waves.hpp"

namespace {

using namespace pyrofront;

enum class Command { simulate, wave, stability, verify, idealized };

/// Flat, typed view of one parsed invocation.  parameters holds every
/// registered option of the chosen subcommand by its long name (defaults
/// included), as the literal command-line / config-file token, so a dump
/// re-parses to the identical configuration.
struct RunConfig {
    Command command = Command::verify;
    std::map<std::string, std::string> parameters;
    std::string output_path;
    std::vector<std::string> overrides;  // verify --set entries (not configurable)
    bool dump_config = false;
};

double require_number(const RunConfig& cfg, const std::string& key) {
    const auto it = cfg.parameters.find(key);
    if (it == cfg.parameters.end())
        throw ArgumentError("missing parameter: " + key);
    try {
        size_t pos = 0;
        const double value = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return value;
    } catch (const std::exception&) {
        throw ArgumentError("parameter '" + key +
                            "' is not numeric: " + it->second);
    }
}

int require_integer(const RunConfig& cfg, const std::string& key) {
    const double value = require_number(cfg, key);
    const int rounded = static_cast<int>(std::llround(value));
    if (static_cast<double>(rounded) != value)
        throw ArgumentError("parameter '" + key +
                            "' must be an integer: " + cfg.parameters.at(key));
    return rounded;
}

std::string require_string(const RunConfig& cfg, const std::string& key) {
    const auto it = cfg.parameters.find(key);
    if (it == cfg.parameters.end())
        throw ArgumentError("missing parameter: " + key);
    return it->second;
}

/// --omega accepts the literal `sqrt3` as sugar for the irrational speed.
double omega_value(const RunConfig& cfg) {
    const std::string text = require_string(cfg, "omega");
    if (text == "sqrt3") return 1.7320508075688772;
    try {
        size_t pos = 0;
        const double value = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ArgumentError("parameter 'omega' is not numeric (or 'sqrt3'): " +
                            text);
    }
}

std::string default_out_dir() {
    const char* env = std::getenv("PYROFRONT_OUT_DIR");
    return (env && *env) ? std::string(env) : std::string(".");
}

std::string resolve_out(const RunConfig& cfg, const std::string& fallback) {
    if (!cfg.output_path.empty()) return cfg.output_path;
    return join_path(default_out_dir(), fallback);
}

void dump_config(const RunConfig& cfg) {
    for (const auto& [key, value] : cfg.parameters) {
        if (value.empty()) continue;  // unset optional; keeps defaults on re-parse
        std::cout << key << " = " << value << "\n";
    }
}

// --------------------------------------------------------------- parsing

void extract_parameters(const CLI::App* sub, RunConfig& cfg) {
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "config" || name == "dump-config" ||
            name == "set")
            continue;
        if (opt->get_expected_min() == 0) {  // flag
            cfg.parameters[name] = opt->count() > 0 ? "true" : "false";
        } else {
            cfg.parameters[name] =
                opt->count() > 0 ? opt->results().back() : opt->get_default_str();
        }
    }
    const auto out = cfg.parameters.find("out");
    if (out != cfg.parameters.end()) cfg.output_path = out->second;
    const auto out_dir = cfg.parameters.find("out-dir");
    if (out_dir != cfg.parameters.end()) cfg.output_path = out_dir->second;
}

CLI::App* add_common(CLI::App& app, const std::string& name,
                     const std::string& blurb) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config",
                    "read `key = value` defaults from a file (explicit flags "
                    "override file values)");
    sub->add_flag("--dump-config",
                  "print the effective configuration as `key = value` lines "
                  "and exit");
    return sub;
}

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

/// Applies a flat `key = value` file on top of defaults; command-line flags
/// keep precedence.  Unknown keys are usage errors naming the key.
void apply_config_file(const CLI::App* sub, const std::string& path,
                       RunConfig& cfg) {
    std::ifstream input(path);
    if (!input)
        throw IoError("cannot read config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("config line " + std::to_string(line_no) +
                                " is not `key = value`: " + stripped);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (cfg.parameters.find(key) == cfg.parameters.end())
            throw ArgumentError("unknown config key '" + key + "' in " + path);
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt != nullptr && opt->count() > 0) continue;  // flag wins
        cfg.parameters[key] = value;
    }
}

void add_wave_options(CLI::App* sub) {
    sub->add_option("--omega", "wave speed (> 0, or the literal 'sqrt3')")
        ->default_str("3");
    sub->add_option("--kappa", "slope at the origin")->default_str("1");
    sub->add_option("--c", "diffusion coefficient")->default_str("1");
    sub->add_option("--kernel", "interaction kernel shape: step|gaussian|zero")
        ->default_str("step")
        ->check(CLI::IsMember({"step", "gaussian", "zero"}));
    sub->add_option("--lambda", "step kernel height")->default_str("10");
    sub->add_option("--radius", "kernel support radius R")
        ->default_str("0.05");
    sub->add_option("--amplitude", "gaussian kernel peak value")
        ->default_str("1");
    sub->add_option("--sigma", "gaussian kernel width")
        ->default_str("0.2");
    sub->add_option("--xmax",
                            "requested right end of the wave grid (the "
                            "actual end is the smallest commensurate value "
                            ">= this)")
        ->default_str("1");
    sub->add_option("--points", "wave grid size")->default_str("20001");
    sub->add_option("--tol", "weighted-norm stopping threshold")
        ->default_str("1e-12");
    sub->add_option("--max-iter", "iteration cap")->default_str("200");
    sub->add_option("--route",
                    "contraction norm: kernel (M = 4 + omega + Lambda) or "
                    "speed (M = omega + 1)")
        ->default_str("kernel")
        ->check(CLI::IsMember({"kernel", "speed"}));
}

RunConfig parse_args(CLI::App& app, int argc, char** argv) {
    app.require_subcommand(1);

    CLI::App* sim = add_common(app, "simulate", "run an evolution preset");
    sim->add_option("--preset",
                    "one of: frozen_a, frozen_b, invasion, extinction, "
                    "boundary_ignition, necessity")
        ->required();
    sim->add_option("--dt", "time step (0 keeps the preset value)")
        ->default_str("0");
    sim->add_option("--t-end", "final time (0 keeps the preset value)")
        ->default_str("0");
    sim->add_option("--stride", "snapshot stride (0 = auto)")
        ->default_str("0");
    sim->add_option("--out", "output CSV path");

    CLI::App* wave = add_common(app, "wave", "solve a traveling-wave profile");
    add_wave_options(wave);
    wave->add_option("--out", "output CSV path");

    CLI::App* stab = add_common(
        app, "stability",
        "evaluate the stability form on the constructed plateau witness");
    add_wave_options(stab);
    stab->add_option("--epsilon", "witness amplitude")
        ->default_str("0.01");
    stab->add_option("--witness-h", "witness grid spacing")
        ->default_str("0.025");
    stab->add_option("--out", "output CSV path");

    CLI::App* ver = add_common(app, "verify", "run the scenario ledger");
    ver->add_flag("--all", "run every registered scenario (the default)");
    ver->add_option("--tag", "run one group: pde|wave|stability|figure")
        ->default_str("");
    ver->add_option("--scenario", "run one scenario by id")->default_str("");
    ver->add_option("--threads", "worker count (0 = hardware)")
        ->default_str("0");
    ver->add_option("--out-dir", "directory for ledger.csv and detail CSVs");
    ver->add_option("--set",
                    "override a scenario parameter, e.g. "
                    "--set invasion.t_end=2 (repeatable)")
        ->configurable(false)
        ->allow_extra_args(false)
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    CLI::App* ideal = add_common(app, "idealized",
                                 "sample the closed-form idealized wave");
    ideal->add_option("--omega", "wave speed (> 0, or the literal 'sqrt3')")
        ->default_str("2");
    ideal->add_option("--kappa", "slope at the origin")
        ->default_str("1");
    ideal->add_option("--xmin", "left end")->default_str("-1");
    ideal->add_option("--xmax", "right end")->default_str("1");
    ideal->add_option("--points", "sample count")->default_str("101");
    ideal->add_option("--out", "output CSV path");

    app.parse(argc, argv);

    RunConfig cfg;
    const CLI::App* chosen = nullptr;
    if (app.got_subcommand(sim)) {
        cfg.command = Command::simulate;
        chosen = sim;
    } else if (app.got_subcommand(wave)) {
        cfg.command = Command::wave;
        chosen = wave;
    } else if (app.got_subcommand(stab)) {
        cfg.command = Command::stability;
        chosen = stab;
    } else if (app.got_subcommand(ver)) {
        cfg.command = Command::verify;
        chosen = ver;
        cfg.overrides = ver->get_option("--set")->results();
    } else {
        cfg.command = Command::idealized;
        chosen = ideal;
    }
    extract_parameters(chosen, cfg);
    const CLI::Option* config_opt = chosen->get_option("--config");
    if (config_opt->count() > 0) {
        apply_config_file(chosen, config_opt->results().back(), cfg);
        const auto out = cfg.parameters.find("out");
        if (out != cfg.parameters.end()) cfg.output_path = out->second;
        const auto out_dir = cfg.parameters.find("out-dir");
        if (out_dir != cfg.parameters.end()) cfg.output_path = out_dir->second;
    }
    cfg.dump_config = chosen->get_option("--dump-config")->count() > 0;
    return cfg;
}

// ------------------------------------------------------------- commands

Kernel kernel_from(const RunConfig& cfg) {
    const std::string shape = require_string(cfg, "kernel");
    if (shape == "step")
        return make_step(require_number(cfg, "lambda"),
                         require_number(cfg, "radius"));
    if (shape == "gaussian")
        return make_gaussian(require_number(cfg, "amplitude"),
                             require_number(cfg, "sigma"),
                             require_number(cfg, "radius"));
    if (shape == "zero") return make_zero();
    throw ArgumentError("parameter 'kernel' must be step|gaussian|zero: " +
                        shape);
}

WaveParams wave_params_from(const RunConfig& cfg) {
    WaveParams params;
    params.omega = omega_value(cfg);
    params.kappa = require_number(cfg, "kappa");
    params.c = require_number(cfg, "c");
    params.kernel = kernel_from(cfg);
    params.grid = wave_grid(params.kernel.R, require_number(cfg, "xmax"),
                            require_integer(cfg, "points"));
    params.tol = require_number(cfg, "tol");
    params.max_iter = require_integer(cfg, "max-iter");
    const std::string route = require_string(cfg, "route");
    if (route == "kernel")
        params.route = ContractionRoute::kernel_weighted;
    else if (route == "speed")
        params.route = ContractionRoute::speed_weighted;
    else
        throw ArgumentError("parameter 'route' must be kernel|speed: " + route);
    return params;
}

int run_simulate(const RunConfig& cfg) {
    ProblemSpec spec = preset_problem(require_string(cfg, "preset"));
    if (const double dt = require_number(cfg, "dt"); dt > 0.0) spec.dt = dt;
    if (const double t_end = require_number(cfg, "t-end"); t_end > 0.0)
        spec.t_end = t_end;
    if (const int stride = require_integer(cfg, "stride"); stride > 0)
        spec.snapshot_stride = stride;

    const Trajectory trajectory = simulate(spec);
    const std::string path =
        resolve_out(cfg, require_string(cfg, "preset") + ".csv");
    write_trajectory_csv(path, trajectory);

    double final_sup = trajectory.final_state()[0];
    for (int i = 0; i < trajectory.final_state().size(); ++i)
        final_sup = std::max(final_sup, trajectory.final_state()[i]);
    std::cout << "preset " << require_string(cfg, "preset") << ": t_end "
              << format_real(trajectory.final_time()) << ", final sup "
              << format_real(final_sup)
              << (trajectory.blew_up ? " (stopped at blow-up)" : "") << "\n"
              << "wrote " << path << "\n";
    return 0;
}

int run_wave(const RunConfig& cfg) {
    const WaveParams params = wave_params_from(cfg);
    const WaveProfile profile = solve(params);
    const std::string path = resolve_out(cfg, "wave.csv");
    write_wave_csv(path, profile, true);

    const IterationReport& it = profile.iteration;
    std::cout << "wave omega " << format_real(params.omega) << ": "
              << it.iterations_used << " iterations, residual_sup "
              << format_real(it.residual_sup) << ", contraction factor "
              << format_real(it.contraction_factor)
              << (it.contraction_certified ? " (certified)" : " (observed only)")
              << "\n"
              << "left limit " << format_real(profile.left_limit()) << "\n"
              << "wrote " << path << "\n";
    if (!it.converged)
        std::cerr << "warning: iteration did not meet tol within max-iter; "
                     "profile written as-is\n";
    return 0;
}

int run_stability(const RunConfig& cfg) {
    const WaveParams params = wave_params_from(cfg);
    const WaveProfile profile = solve(params);
    const double c = params.c;
    const double epsilon = require_number(cfg, "epsilon");
    const InstabilityWitness witness = instability_witness(
        profile, params.kernel, c, epsilon, require_number(cfg, "witness-h"));
    const StabilityBreakdown q =
        stability_form_detailed(profile, witness.perturbation, c, params.kernel);

    std::cout << "witness mu " << format_real(witness.mu) << ", plateau M "
              << format_real(witness.M) << "\n"
              << "Q " << format_real(q.value) << " (interaction "
              << format_real(q.interaction) << ", gradient term "
              << format_real(c * q.gradient) << ")\n"
              << "predicted margin " << format_real(witness.predicted_margin)
              << " -> " << (q.value > 0.0 ? "destabilizing" : "not destabilizing")
              << "\n";
    if (!cfg.output_path.empty()) {
        SmallSupportReport row;
        row.sigma = witness.perturbation.support_length();
        row.bound = std::cbrt(2.0 * c / params.kernel.Lambda);
        row.Q = q.value;
        row.precondition_met = row.sigma <= row.bound;
        row.pass = q.value > 0.0;
        write_stability_csv(cfg.output_path, {{"plateau_witness", row}});
        std::cout << "wrote " << cfg.output_path << "\n";
    }
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const std::string scenario = require_string(cfg, "scenario");
    const std::string tag = require_string(cfg, "tag");
    if (!scenario.empty() && !tag.empty())
        throw ArgumentError("--scenario and --tag are mutually exclusive");

    VerifyOptions options;
    options.out_dir =
        cfg.output_path.empty() ? default_out_dir() : cfg.output_path;
    options.threads = require_integer(cfg, "threads");
    for (const std::string& entry : cfg.overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size())
            throw ArgumentError("--set expects <scenario>.<param>=<value>: " +
                                entry);
        const std::string key = entry.substr(0, eq);
        const std::string text = entry.substr(eq + 1);
        try {
            size_t pos = 0;
            const double value = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            options.overrides[key] = value;
        } catch (const std::exception&) {
            throw ArgumentError("--set value for '" + key +
                                "' is not numeric: " + text);
        }
    }

    std::vector<ScenarioReport> reports;
    if (!scenario.empty())
        reports.push_back(run_scenario(scenario, options));
    else
        reports = run_all(tag, options);

    write_ledger_csv(join_path(options.out_dir, "ledger.csv"), reports);

    bool all_pass = true;
    for (const auto& report : reports) {
        all_pass = all_pass && report.pass;
        std::cout << (report.pass ? "[PASS] " : "[FAIL] ") << report.scenario_id
                  << "  (" << report.claim_ref << ", " << report.runtime_ms
                  << " ms)\n";
        if (!report.pass) {
            for (const auto& [key, value] : report.measured) {
                std::cout << "    " << key << " = " << format_real(value);
                const auto limit = report.threshold.find(key);
                if (limit != report.threshold.end())
                    std::cout << "  (threshold " << format_real(limit->second)
                              << ")";
                std::cout << "\n";
            }
        }
    }
    std::cout << reports.size() << " scenario(s), "
              << (all_pass ? "all passed" : "FAILURES present") << "; ledger in "
              << options.out_dir << "\n";
    return all_pass ? 0 : 1;
}

int run_idealized(const RunConfig& cfg) {
    const double omega = omega_value(cfg);
    const double kappa = require_number(cfg, "kappa");
    Grid1D grid{require_number(cfg, "xmin"), require_number(cfg, "xmax"),
                require_integer(cfg, "points")};
    grid.validate();

    std::vector<std::string> rows;
    rows.reserve(static_cast<size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i)
        rows.push_back(format_real(grid.x(i)) + "," +
                       format_real(idealized_wave(omega, grid.x(i), kappa)));
    const std::string path = resolve_out(cfg, "idealized.csv");
    write_csv(path, "x,v", rows);
    std::cout << "idealized omega " << format_real(omega) << ": "
              << grid.n_points << " samples\nwrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pyrofront: nonlocal ignition-front laboratory "
        "(evolution runs, traveling waves, stability forms, scenario ledger)"};
    RunConfig cfg;
    try {
        cfg = parse_args(app, argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.dump_config) {
            dump_config(cfg);
            return 0;
        }
        switch (cfg.command) {
            case Command::simulate: return run_simulate(cfg);
            case Command::wave: return run_wave(cfg);
            case Command::stability: return run_stability(cfg);
            case Command::verify: return run_verify(cfg);
            case Command::idealized: return run_idealized(cfg);
        }
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigurationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
