#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("DISTILL_CLI");
    return p ? p : "";
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = "cli_test_stdout.tmp";
    std::string cmd = cli_path() + " " + args + " > " + out_file + " 2> cli_test_stderr.tmp";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: usage errors exit with code 2") {
    REQUIRE(!cli_path().empty());
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("sweep --d 1").exit_code == 2);
    CHECK(run_cli("optimize --d 4 --family bogus --restarts 2").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("cli: extremal reports a zero gap") {
    RunResult r = run_cli("extremal --d 4");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["d"] == 4);
    CHECK(std::abs(j["abs_gap"].get<double>()) < 1e-12);
    CHECK(j["bound"] == 0.5);
}

TEST_CASE("cli: sweep emits deterministic CSV plus sidecar and respects the bound") {
    RunResult r1 = run_cli("sweep --d 4 --n 200 --seed 9 --out cli_sweep_a.csv");
    REQUIRE(r1.exit_code == 0);
    RunResult r2 = run_cli("sweep --d 4 --n 200 --seed 9 --out cli_sweep_b.csv");
    REQUIRE(r2.exit_code == 0);
    std::string a = slurp("cli_sweep_a.csv"), b = slurp("cli_sweep_b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("index,family,value\n", 0) == 0);
    auto sidecar = nlohmann::json::parse(slurp("cli_sweep_a.csv.json"));
    CHECK(sidecar["n"] == 200);
    CHECK(sidecar["seed"] == 9);
    CHECK(sidecar["max_value"].get<double>() < sidecar["bound"].get<double>());
    std::remove("cli_sweep_a.csv");
    std::remove("cli_sweep_a.csv.json");
    std::remove("cli_sweep_b.csv");
    std::remove("cli_sweep_b.csv.json");
}

TEST_CASE("cli: werner reports classification and the closed-form witness value") {
    RunResult r = run_cli("werner --d 4 --alpha 0.6 --restarts 6 --seed 1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(j["classification"] == "npt_one_distillable");
    CHECK(std::abs(j["min_value"].get<double>() - (-0.2 / 13.6)) < 1e-6);
}

TEST_CASE("cli: oracle batches pass") {
    RunResult r = run_cli("oracle --lemma a1 --n 500 --seed 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("500/500 pass") != std::string::npos);
}

TEST_CASE("cli: optimize returns a bound-respecting report") {
    RunResult r = run_cli("optimize --d 4 --family normal_a --restarts 6 --seed 3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    double best = j["best_value"].get<double>();
    CHECK(best > 0.45);
    CHECK(best <= 0.5 + 1e-9);
    CHECK(j["trace"].size() == 6);
}
