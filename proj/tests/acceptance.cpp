// Acceptance gate: twelve numbered behavioral criteria, each reported as a
// single pass/fail line.  Run with no arguments for the full gate or with a
// criterion number (1-12) for one entry.  Exit code 0 iff every criterion
// that ran passed.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pyrofront/verify.hpp"

using namespace pyrofront;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

double measured(const ScenarioReport& report, const std::string& key) {
    const auto it = report.measured.find(key);
    return it == report.measured.end()
               ? std::numeric_limits<double>::quiet_NaN()
               : it->second;
}

ScenarioReport run(const std::string& id) { return run_scenario(id); }

// --- criterion 1: reference wave converges fast, small residual, quick ---

Outcome criterion_1() {
    const ScenarioReport r = run("wave_convergence_omega3");
    Outcome o;
    o.pass = r.pass && r.runtime_ms < 10000;
    o.detail = "weighted step below 1e-8 after " +
               num(measured(r, "iterations_to_target")) +
               " iterations (limit 15), residual_sup " +
               num(measured(r, "residual_sup")) + ", anchors held, " +
               std::to_string(r.runtime_ms) + " ms (limit 10000)";
    return o;
}

// --- criterion 2: agreement with the idealized closed form ---

Outcome criterion_2() {
    const ScenarioReport r3 = run("wave_vs_idealized_3");
    const ScenarioReport r2 = run("wave_vs_idealized_2");
    const ScenarioReport rs = run("wave_vs_idealized_sqrt3");
    Outcome o;
    o.pass = r3.pass && r2.pass && rs.pass;
    o.detail = "sup-relative error on [-1,1]: speed3 " +
               num(measured(r3, "sup_rel_error_positive")) + ", speed2 " +
               num(measured(r2, "sup_rel_error_positive")) + ", speed sqrt3 " +
               num(measured(rs, "sup_rel_error_positive")) +
               " (cap 0.05); sqrt3 slope sign change at x = " +
               num(measured(rs, "sign_change_x"));
    return o;
}

// --- criterion 3: exponential envelopes on every converged slope ---

Outcome criterion_3() {
    const ScenarioReport r = run("exponential_bounds");
    Outcome o;
    o.pass = r.pass;
    o.detail = "worst violation/tolerance ratio " +
               num(measured(r, "max_violation_ratio")) +
               " (cap 1), zero-kernel equality error " +
               num(measured(r, "zero_equality_error")) +
               " (cap 1e-10), right-edge ratio " +
               num(measured(r, "ratio_omega3")) + " < 1";
    return o;
}

// --- criterion 4: closed-form positivity interval, quick ---

Outcome criterion_4() {
    const ScenarioReport r = run("monotonicity_L");
    Outcome o;
    o.pass = r.pass && r.runtime_ms < 10000;
    o.detail = "L = " + num(measured(r, "L")) + " (expected 2.370, error " +
               num(measured(r, "L_error")) +
               "), slope positive through L, " + std::to_string(r.runtime_ms) +
               " ms (limit 10000)";
    return o;
}

// --- criterion 5: slow waves lose monotonicity ---

Outcome criterion_5() {
    const ScenarioReport r = run("nonmonotone_small_omega");
    Outcome o;
    o.pass = r.pass;
    o.detail = num(measured(r, "negative_count")) +
               " of 6 scanned speeds show a negative slope node; largest "
               "such speed " +
               num(measured(r, "largest_negative_omega"));
    return o;
}

// --- criterion 6: comparison principle and necessity of ignition ---

Outcome criterion_6() {
    const ScenarioReport rc = run("comparison_ordering");
    const ScenarioReport rn = run("necessity_of_ignition");
    const long long total = rc.runtime_ms + rn.runtime_ms;
    Outcome o;
    o.pass = rc.pass && rn.pass && total < 30000;
    o.detail = "worst ordering violation over 100 pairs " +
               num(measured(rc, "max_violation")) +
               " (cap 1e-12); sub-ignition run stays below the threshold "
               "(final sup minus threshold " +
               num(measured(rn, "final_sup_minus_theta")) + "); " +
               std::to_string(total) + " ms combined (limit 30000)";
    return o;
}

// --- criterion 7: extinction decays at the predicted exponential rate ---

Outcome criterion_7() {
    const ScenarioReport r = run("extinction");
    Outcome o;
    o.pass = r.pass;
    o.detail = "fitted decay rate " + num(measured(r, "decay_rate")) +
               " >= 0.9 * (2nc - C) with C = " + num(measured(r, "constant")) +
               ", final sup " + num(measured(r, "final_sup")) +
               " below the ignition threshold";
    return o;
}

// --- criterion 8: invasion grows exponentially with ordered ratios ---

Outcome criterion_8() {
    const ScenarioReport r = run("invasion");
    Outcome o;
    o.pass = r.pass;
    o.detail = "fitted growth rate " + num(measured(r, "fitted_alpha")) +
               " > 0, min-ratio nondecreasing (worst drop " +
               num(measured(r, "ratio_drop")) + ")";
    return o;
}

// --- criterion 9: boundary data ignites the interior by t* ---

Outcome criterion_9() {
    const ScenarioReport r = run("boundary_ignition");
    Outcome o;
    o.pass = r.pass;
    o.detail = "min u at t* = 0.25 is " + num(measured(r, "min_at_tstar")) +
               ", pointwise comparison bound violation " +
               num(measured(r, "max_bound_violation"));
    return o;
}

// --- criterion 10: frozen-convolution error scales linearly in time ---

Outcome criterion_10() {
    const ScenarioReport r = run("frozen_convolution_error");
    Outcome o;
    o.pass = r.pass;
    o.detail = "E(T)/E(T/2) = " + num(measured(r, "ratio_a")) + " and " +
               num(measured(r, "ratio_b")) +
               " for the two presets (window [1.7, 2.3])";
    return o;
}

// --- criterion 11: instability witness + small-support stability +
//     the scalar positive-part inequality in exact arithmetic ---

Outcome scalar_inequality_outcome() {
    // |(a + b)_+ - a_+| <= |b| checked on dyadic rationals j * 2^-10 with
    // |j| <= 2^20: every quantity below is exact in double precision, so
    // the comparison tests the inequality itself, not rounding behavior.
    std::mt19937_64 rng(0x5eedfu);
    std::uniform_int_distribution<std::int64_t> draw(-(1 << 20), 1 << 20);
    const double scale = std::ldexp(1.0, -10);
    std::size_t violations = 0;
    double worst = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        const double a = static_cast<double>(draw(rng)) * scale;
        const double b = static_cast<double>(draw(rng)) * scale;
        const double lhs = std::abs(std::max(a + b, 0.0) - std::max(a, 0.0));
        if (lhs > std::abs(b)) {
            ++violations;
            worst = std::max(worst, lhs - std::abs(b));
        }
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = violations == 0
                   ? "0 violations in 1000000 exact-arithmetic pairs"
                   : std::to_string(violations) + " violations (worst excess " +
                         num(worst) + ")";
    return o;
}

Outcome criterion_11() {
    const ScenarioReport rw = run("instability_witness");
    const ScenarioReport rs = run("small_support_stability");
    const Outcome scalar = scalar_inequality_outcome();
    Outcome o;
    o.pass = rw.pass && rs.pass && scalar.pass;
    o.detail = "witness Q = " + num(measured(rw, "Q")) +
               " >= half the predicted margin " +
               num(measured(rw, "predicted_margin")) + "; max Q over " +
               num(measured(rs, "seeds_run")) +
               " small-support perturbations " + num(measured(rs, "max_Q")) +
               " (cap 1e-10); scalar inequality: " + scalar.detail;
    return o;
}

// --- criterion 12: byte-identical outputs across runs and thread counts ---

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> harvest(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            files[fs::relative(entry.path(), dir).string()] =
                read_file(entry.path());
    return files;
}

std::string strip_runtime_column(const std::string& ledger) {
    std::istringstream in(ledger);
    std::string line, out;
    while (std::getline(in, line)) {
        const auto last_comma = line.rfind(',');
        out += line.substr(0, last_comma);
        out += '\n';
    }
    return out;
}

Outcome criterion_12() {
    const fs::path base = "acceptance_determinism";
    const fs::path dirs[3] = {base / "run_a", base / "run_b", base / "run_c"};
    const int threads[3] = {2, 2, 1};
    fs::remove_all(base);

    for (int k = 0; k < 3; ++k) {
        fs::create_directories(dirs[k]);
        VerifyOptions options;
        options.out_dir = dirs[k].string();
        options.threads = threads[k];
        const std::vector<ScenarioReport> reports = run_all("", options);
        write_ledger_csv((dirs[k] / "ledger.csv").string(), reports);
    }

    const auto a = harvest(dirs[0]);
    const auto b = harvest(dirs[1]);
    const auto c = harvest(dirs[2]);

    Outcome o;
    o.pass = true;
    std::string mismatch;
    const auto compare = [&](const std::map<std::string, std::string>& lhs,
                             const std::map<std::string, std::string>& rhs,
                             const char* label) {
        if (lhs.size() != rhs.size()) {
            o.pass = false;
            mismatch += std::string(" [") + label + ": file sets differ]";
            return;
        }
        for (const auto& [name, content] : lhs) {
            const auto it = rhs.find(name);
            if (it == rhs.end()) {
                o.pass = false;
                mismatch += std::string(" [") + label + ": missing " + name + "]";
                continue;
            }
            const bool is_ledger = name == "ledger.csv";
            const std::string& lhs_bytes =
                is_ledger ? strip_runtime_column(content) : content;
            const std::string rhs_bytes =
                is_ledger ? strip_runtime_column(it->second) : it->second;
            if (lhs_bytes != rhs_bytes) {
                o.pass = false;
                mismatch += std::string(" [") + label + ": " + name + " differs]";
            }
        }
    };
    compare(a, b, "repeat run");
    compare(a, c, "thread count 2 vs 1");

    std::size_t csv_count = 0;
    for (const auto& [name, content] : a)
        if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") ++csv_count;
    o.pass = o.pass && csv_count >= 17;  // every scenario leaves at least one file

    if (o.pass) {
        o.detail = std::to_string(csv_count) +
                   " CSVs byte-identical across a repeat run and across "
                   "thread counts (ledger compared without runtimes)";
        fs::remove_all(base);  // keep the tree only for post-mortems
    } else {
        o.detail = "mismatches:" + mismatch + " (outputs left in " +
                   base.string() + ")";
    }
    return o;
}

Outcome run_criterion(int n) {
    switch (n) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
        case 10: return criterion_10();
        case 11: return criterion_11();
        case 12: return criterion_12();
    }
    Outcome o;
    o.detail = "unknown criterion number";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 12) {
            std::fprintf(stderr, "usage: %s [criterion 1-12]\n", argv[0]);
            return 2;
        }
        wanted.push_back(n);
    } else {
        for (int n = 1; n <= 12; ++n) wanted.push_back(n);
    }

    bool all_pass = true;
    for (const int n : wanted) {
        Outcome outcome;
        try {
            outcome = run_criterion(n);
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        all_pass = all_pass && outcome.pass;
        std::printf("[%s] criterion %d: %s\n", outcome.pass ? "PASS" : "FAIL",
                    n, outcome.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
