// End-to-end checks of the command-line tool: exit codes, CSV outputs,
// config round-trips.  Each case shells out to the built binary.
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PYROFRONT_BIN
#error "PYROFRONT_BIN must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string capture = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string command =
        std::string(PYROFRONT_BIN) + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = (status >= 0) ? ((status >> 8) & 0xff) : -1;
    std::ifstream in(capture);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    in.close();
    fs::remove(capture);
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int line_count(const std::string& text) {
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("help exits 0 and names the subcommands") {
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    for (const char* sub : {"simulate", "wave", "stability", "verify", "idealized"})
        CHECK(help.output.find(sub) != std::string::npos);
}

TEST_CASE("unknown flags and missing required options exit 2") {
    CHECK(run_cli("wave --no-such-flag").exit_code == 2);
    CHECK(run_cli("simulate").exit_code == 2);           // --preset is required
    CHECK(run_cli("nonexistent_subcommand").exit_code == 2);
    const RunResult bad_value = run_cli("wave --omega not_a_number --points 101");
    CHECK(bad_value.exit_code == 2);
    CHECK(bad_value.output.find("omega") != std::string::npos);
}

TEST_CASE("idealized: writes the x,v table with one row per node") {
    const std::string out = "cli_idealized.csv";
    fs::remove(out);
    const RunResult run =
        run_cli("idealized --omega 2 --points 101 --xmin -1 --xmax 1 --out " + out);
    CHECK(run.exit_code == 0);
    REQUIRE(fs::exists(out));
    const std::string text = slurp(out);
    CHECK(text.rfind("x,v\n", 0) == 0);
    CHECK(line_count(text) == 102);  // header + 101 rows
    CHECK(text.find("\r") == std::string::npos);  // LF line endings only
    fs::remove(out);

    // with 3 points the middle node is exactly the origin, where the
    // closed form vanishes
    const RunResult tiny =
        run_cli("idealized --omega 2 --points 3 --xmin -1 --xmax 1 --out " + out);
    CHECK(tiny.exit_code == 0);
    CHECK(slurp(out).find("\n0,0\n") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("idealized: sqrt3 literal is accepted for the speed") {
    const std::string out = "cli_sqrt3.csv";
    const RunResult run =
        run_cli("idealized --omega sqrt3 --points 11 --out " + out);
    CHECK(run.exit_code == 0);
    CHECK(fs::exists(out));
    fs::remove(out);
}

TEST_CASE("wave: solves a small profile and writes x,v,w,idealized") {
    const std::string out = "cli_wave.csv";
    const RunResult run = run_cli(
        "wave --omega 3 --kernel step --lambda 10 --radius 0.05 "
        "--points 2001 --xmax 1 --out " + out);
    CHECK(run.exit_code == 0);
    REQUIRE(fs::exists(out));
    const std::string text = slurp(out);
    CHECK(text.rfind("x,v,w,idealized\n", 0) == 0);
    CHECK(line_count(text) == 2002);
    fs::remove(out);
}

TEST_CASE("CSV output is byte-identical across repeated runs") {
    const RunResult a = run_cli("idealized --omega 3 --points 257 --out cli_rep_a.csv");
    const RunResult b = run_cli("idealized --omega 3 --points 257 --out cli_rep_b.csv");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp("cli_rep_a.csv") == slurp("cli_rep_b.csv"));
    fs::remove("cli_rep_a.csv");
    fs::remove("cli_rep_b.csv");
}

TEST_CASE("dump-config round-trips through a config file") {
    const RunResult dump = run_cli("wave --omega 2.5 --points 501 --dump-config");
    CHECK(dump.exit_code == 0);
    {
        std::ofstream cfg("cli_roundtrip.cfg");
        cfg << dump.output;
    }
    const RunResult reread = run_cli("wave --config cli_roundtrip.cfg --dump-config");
    CHECK(reread.exit_code == 0);
    CHECK(reread.output == dump.output);
    fs::remove("cli_roundtrip.cfg");
}

TEST_CASE("command-line flags override config-file values") {
    {
        std::ofstream cfg("cli_override.cfg");
        cfg << "# comment line\n";
        cfg << "omega = 2\n";
        cfg << "points = 301\n";
    }
    const RunResult run =
        run_cli("wave --config cli_override.cfg --omega 3 --dump-config");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("omega = 3") != std::string::npos);
    CHECK(run.output.find("points = 301") != std::string::npos);
    fs::remove("cli_override.cfg");
}

TEST_CASE("unknown config key exits 2 and names the key") {
    {
        std::ofstream cfg("cli_badkey.cfg");
        cfg << "bogus_key = 1\n";
    }
    const RunResult run = run_cli("wave --config cli_badkey.cfg");
    CHECK(run.exit_code == 2);
    CHECK(run.output.find("bogus_key") != std::string::npos);
    fs::remove("cli_badkey.cfg");

    const RunResult missing = run_cli("wave --config cli_no_such.cfg");
    CHECK(missing.exit_code == 3);
}

TEST_CASE("simulate: preset with shortened horizon writes a trajectory") {
    const std::string out = "cli_sim.csv";
    const RunResult run =
        run_cli("simulate --preset necessity --t-end 0.01 --out " + out);
    CHECK(run.exit_code == 0);
    REQUIRE(fs::exists(out));
    const std::string text = slurp(out);
    CHECK(text.rfind("t,x,u\n", 0) == 0);
    CHECK(line_count(text) > 100);
    fs::remove(out);

    CHECK(run_cli("simulate --preset no_such_preset --out x.csv").exit_code == 2);
}

TEST_CASE("verify: single fast scenario passes, writes the ledger") {
    const std::string dir = "cli_verify_out";
    fs::remove_all(dir);
    const RunResult run =
        run_cli("verify --scenario figure_fighss_fixture --out-dir " + dir);
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("[PASS] figure_fighss_fixture") != std::string::npos);
    REQUIRE(fs::exists(dir + "/ledger.csv"));
    const std::string ledger = slurp(dir + "/ledger.csv");
    CHECK(ledger.rfind("scenario_id,claim_ref,pass,runtime_ms\n", 0) == 0);
    CHECK(ledger.find("figure_fighss_fixture,") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("verify: a failing threshold turns into exit 1") {
    const std::string dir = "cli_verify_fail";
    fs::remove_all(dir);
    const RunResult run = run_cli(
        "verify --scenario figure_fighss_fixture "
        "--set figure_fighss_fixture.identity_tolerance=0 --out-dir " + dir);
    CHECK(run.exit_code == 1);
    CHECK(run.output.find("[FAIL] figure_fighss_fixture") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("verify: malformed overrides exit 2") {
    CHECK(run_cli("verify --scenario figure_fighss_fixture --set no_dot_here=1")
              .exit_code == 2);
    CHECK(run_cli("verify --scenario figure_fighss_fixture "
                  "--set unknown_scenario.param=1").exit_code == 2);
    CHECK(run_cli("verify --scenario figure_fighss_fixture "
                  "--set figure_fighss_fixture.identity_tolerance=abc").exit_code == 2);
    CHECK(run_cli("verify --scenario no_such_scenario").exit_code == 2);
}

TEST_CASE("unwritable output path exits 3") {
    const RunResult run =
        run_cli("idealized --omega 2 --points 11 --out /dev/null/nested/x.csv");
    CHECK(run.exit_code == 3);
}

TEST_CASE("PYROFRONT_OUT_DIR provides the default output directory") {
    const std::string dir = "cli_env_out";
    fs::remove_all(dir);
    fs::create_directory(dir);
    const std::string command = "PYROFRONT_OUT_DIR=" + dir + " " +
                                std::string(PYROFRONT_BIN) +
                                " idealized --omega 2 --points 11 "
                                "> cli_env_capture.txt 2>&1";
    const int status = std::system(command.c_str());
    CHECK(((status >> 8) & 0xff) == 0);
    CHECK(fs::exists(dir + "/idealized.csv"));
    fs::remove("cli_env_capture.txt");
    fs::remove_all(dir);
}

TEST_CASE("numbers round-trip at full double precision") {
    const std::string out = "cli_precision.csv";
    const RunResult run =
        run_cli("idealized --omega 3 --points 21 --xmin -1 --xmax 1 --out " + out);
    CHECK(run.exit_code == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    bool checked_nontrivial = false;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const std::string value = line.substr(comma + 1);
        const double parsed = std::strtod(value.c_str(), nullptr);
        // re-serializing at 17 significant digits must reproduce the token
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%.17g", parsed);
        double reparsed = std::strtod(buffer, nullptr);
        CHECK(reparsed == parsed);
        if (value.size() > 10) checked_nontrivial = true;
    }
    CHECK(checked_nontrivial);
    in.close();
    fs::remove(out);
}
