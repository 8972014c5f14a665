// Scenario registry plumbing: ids, tags, overrides, presets, slope fitting,
// ledger export.  The scenarios' scientific content is exercised by the
// acceptance binary; here we verify the machinery around them.
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pyrofront/verify.hpp"

using namespace pyrofront;

TEST_CASE("scenario registry: sorted, tagged, self-describing") {
    const std::vector<std::string> ids = scenario_ids();
    CHECK(ids.size() == 17);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());  // unique

    // spot-check known entries
    CHECK(std::find(ids.begin(), ids.end(), "wave_convergence_omega3") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "extinction") != ids.end());
    CHECK(scenario_tag("wave_convergence_omega3") == "wave");
    CHECK(scenario_tag("extinction") == "pde");
    CHECK(scenario_tag("instability_witness") == "stability");
    CHECK(scenario_tag("figure_fighss_fixture") == "figure");
    CHECK_FALSE(scenario_claim("extinction").empty());

    for (const std::string& id : ids) {
        const std::string tag = scenario_tag(id);
        CHECK((tag == "pde" || tag == "wave" || tag == "stability" || tag == "figure"));
    }

    CHECK_THROWS_AS(scenario_tag("no_such_scenario"), ArgumentError);
    CHECK_THROWS_AS(scenario_claim("no_such_scenario"), ArgumentError);
    CHECK_THROWS_AS(run_scenario("no_such_scenario"), ArgumentError);
}

TEST_CASE("run_scenario: fast fixture scenario passes and reports fields") {
    const ScenarioReport report = run_scenario("figure_fighss_fixture");
    CHECK(report.scenario_id == "figure_fighss_fixture");
    CHECK_FALSE(report.claim_ref.empty());
    CHECK(report.pass);
    CHECK_FALSE(report.measured.empty());
    CHECK(report.runtime_ms >= 0);
}

TEST_CASE("override keys: addressing rules") {
    VerifyOptions options;

    SUBCASE("override for the scenario itself is applied") {
        options.overrides["figure_fighss_fixture.identity_tolerance"] = 1e-15;
        const ScenarioReport tightened =
            run_scenario("figure_fighss_fixture", options);
        CHECK(tightened.threshold.at("max_identity_error") == 1e-15);
    }
    SUBCASE("keys addressed to other registered scenarios are ignored") {
        options.overrides["extinction.rate_fraction"] = 0.5;
        CHECK_NOTHROW(run_scenario("figure_fighss_fixture", options));
    }
    SUBCASE("unknown parameter for the scenario is an error") {
        options.overrides["figure_fighss_fixture.bogus_param"] = 1.0;
        CHECK_THROWS_AS(run_scenario("figure_fighss_fixture", options), ArgumentError);
    }
    SUBCASE("unregistered scenario prefix is an error") {
        options.overrides["nonexistent_scenario.param"] = 1.0;
        CHECK_THROWS_AS(run_scenario("figure_fighss_fixture", options), ArgumentError);
    }
    SUBCASE("key without a scenario prefix is an error") {
        options.overrides["tolerance"] = 1.0;
        CHECK_THROWS_AS(run_scenario("figure_fighss_fixture", options), ArgumentError);
    }
}

TEST_CASE("run_scenario writes detail CSVs only when asked") {
    const std::string dir = "verify_out_test";
    std::filesystem::remove_all(dir);
    VerifyOptions options;
    options.out_dir = dir;
    const ScenarioReport report = run_scenario("figure_fighss_fixture", options);
    CHECK(report.pass);
    CHECK(std::filesystem::exists(dir + "/figure_fighss_fixture.csv"));
    std::filesystem::remove_all(dir);

    // no out_dir, no files: nothing new appears in the working directory
    CHECK_NOTHROW(run_scenario("figure_fighss_fixture"));
    CHECK_FALSE(std::filesystem::exists("figure_fighss_fixture.csv"));
}

TEST_CASE("run_all: tag filter and sorted reports") {
    const std::vector<ScenarioReport> reports = run_all("figure");
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().scenario_id == "figure_fighss_fixture");

    CHECK_THROWS_AS(run_all("bogus_tag"), ArgumentError);
}

TEST_CASE("preset problems: registered names validate, unknown rejected") {
    for (const char* name : {"frozen_a", "frozen_b", "invasion", "extinction",
                             "boundary_ignition", "necessity"}) {
        const ProblemSpec spec = preset_problem(name);
        CHECK_NOTHROW(spec.validate());
        CHECK(spec.dt <= spec.cfl_limit());
    }
    CHECK_THROWS_AS(preset_problem("nope"), ArgumentError);
}

TEST_CASE("fitted_slope: exact on affine data, guarded on degenerate input") {
    const std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 * x + 1.0);
    CHECK(fitted_slope(xs, ys) == doctest::Approx(2.0).epsilon(1e-12));

    // a perturbation orthogonal to (x - mean) shifts the intercept only
    std::vector<double> noisy = ys;
    noisy[1] += 0.5;
    noisy[3] += 0.5;
    CHECK(fitted_slope(xs, noisy) == doctest::Approx(2.0).epsilon(1e-12));

    // whereas an antisymmetric perturbation tilts it by a known amount:
    // [(1-2)(+0.5) + (3-2)(-0.5)] / sum (x-2)^2 = -1/10
    std::vector<double> tilted = ys;
    tilted[1] += 0.5;
    tilted[3] -= 0.5;
    CHECK(fitted_slope(xs, tilted) == doctest::Approx(1.9).epsilon(1e-12));

    CHECK_THROWS_AS(fitted_slope({1.0}, {2.0}), ArgumentError);
    CHECK_THROWS_AS(fitted_slope({1.0, 1.0}, {2.0, 3.0}), ArgumentError);
    CHECK_THROWS_AS(fitted_slope({1.0, 2.0}, {2.0}), ArgumentError);
}

TEST_CASE("ledger CSV: header and one deterministic row per report") {
    ScenarioReport a;
    a.scenario_id = "alpha";
    a.claim_ref = "claim-a";
    a.pass = true;
    a.runtime_ms = 12;
    ScenarioReport b;
    b.scenario_id = "beta";
    b.claim_ref = "claim-b";
    b.pass = false;
    b.runtime_ms = 7;

    const std::string path = "ledger_test.csv";
    write_ledger_csv(path, {a, b});
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "scenario_id,claim_ref,pass,runtime_ms");
    std::getline(in, line);
    CHECK(line == "alpha,claim-a,true,12");
    std::getline(in, line);
    CHECK(line == "beta,claim-b,false,7");
    CHECK_FALSE(std::getline(in, line));
    in.close();
    std::remove(path.c_str());
}
