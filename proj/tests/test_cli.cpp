// End-to-end tests against the built CLI binary (path injected by CMake).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "hardylab/weights.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string command =
        env_prefix + " " + std::string(HARDYLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
    const int status = pclose(pipe);
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = std::move(output);
    return result;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

} // namespace

TEST_CASE("weights csv: header, row count, values round-trip at full precision") {
    const RunResult result = run_cli("weights --from 1 --to 3 --format csv");
    CHECK(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,kpp,classical,gap,scaled_gap");
    const auto row1 = split_csv(lines[1]);
    REQUIRE(row1.size() == 5);
    CHECK(row1[0] == "1");
    CHECK(std::stod(row1[1]) == hardylab::kpp_weight(1)); // bit-exact round-trip
    CHECK(std::stod(row1[2]) == 0.25);
}

TEST_CASE("weights csv: scaled gap at n=1000") {
    const RunResult result = run_cli("weights --from 1000 --to 1000 --format csv");
    CHECK(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 2);
    const auto row = split_csv(lines[1]);
    REQUIRE(row.size() == 5);
    CHECK(std::stod(row[4]) == doctest::Approx(0.078125).epsilon(1e-6));
}

TEST_CASE("weights usage errors") {
    CHECK(run_cli("weights --from 0 --to 3").exit_code == 2);
    CHECK(run_cli("weights --from 5 --to 3").exit_code == 2);
    CHECK(run_cli("weights --from 1 --to 100000000").exit_code == 2);
    CHECK(run_cli("weights --from 1 --to 2 --format xml").exit_code == 2);
    CHECK(run_cli("weights --from 1 --to 2 --perturb 1e5:0.02").exit_code == 2);
}

TEST_CASE("weights with a perturbation adds the perturbed column") {
    const RunResult result = run_cli("weights --from 1 --to 2 --perturb 1:0.01 --format csv");
    CHECK(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "n,kpp,classical,gap,scaled_gap,perturbed");
    const auto row1 = split_csv(lines[1]);
    REQUIRE(row1.size() == 6);
    CHECK(std::stod(row1[5]) == doctest::Approx(hardylab::kpp_weight(1) + 0.01).epsilon(1e-15));
    const auto row2 = split_csv(lines[2]);
    CHECK(std::stod(row2[5]) == hardylab::kpp_weight(2)); // off-site unchanged
}

TEST_CASE("weights json envelope") {
    const RunResult result = run_cli("weights --from 1 --to 3 --format json");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["command"] == "weights");
    REQUIRE(envelope["results"]["rows"].size() == 3);
    CHECK(envelope["results"]["rows"][0]["kpp"].get<double>() == hardylab::kpp_weight(1));
}

TEST_CASE("verify builtin step and sqrt") {
    const RunResult step = run_cli("verify step:10");
    CHECK(step.exit_code == 0);
    const RunResult sqrt_m = run_cli("verify sqrt:50");
    CHECK(sqrt_m.exit_code == 0);
    const json envelope = json::parse(sqrt_m.output);
    CHECK(envelope["results"]["pass"] == true);
}

TEST_CASE("help and version exit zero") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("probe --help").exit_code == 0);
    const RunResult version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("probe runs under the extended mode") {
    const RunResult result = run_cli("--mode extended probe 16");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["mode"] == "extended(256)");
    CHECK(envelope["results"]["remainder"].get<double>() ==
          doctest::Approx(0.3606632209461842).epsilon(1e-13));
}

TEST_CASE("witness honors an explicit level") {
    // eps*k = 0.2 beats R(u^200) ~ 0.189 but not R(u^50) ~ 0.256
    const RunResult good = run_cli("witness 2 0.1 --level 200");
    CHECK(good.exit_code == 0);
    const json envelope = json::parse(good.output);
    CHECK(envelope["results"]["level"] == 200);
    CHECK(envelope["results"]["margin"].get<double>() > 0.0);
    const RunResult thin = run_cli("witness 2 0.1 --level 50");
    CHECK(thin.exit_code == 1);
    CHECK(json::parse(thin.output)["results"]["verdict"] ==
          "no violation detected at this level");
    // explicit level at or below the site is a usage error
    CHECK(run_cli("witness 50 0.1 --level 50").exit_code == 2);
}

TEST_CASE("verify builtin e1") {
    const RunResult result = run_cli("verify e1");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["command"] == "verify");
    CHECK(envelope["mode"] == "compensated");
    CHECK(envelope["results"]["pass"] == true);
    CHECK(envelope["results"]["dirichlet"].get<double>() == 2.0);
    CHECK(envelope["results"]["weighted"].get<double>() ==
          doctest::Approx(0.5857864376269049).epsilon(1e-14));
    CHECK(envelope["results"]["remainder"].get<double>() ==
          doctest::Approx(1.4142135623730951).epsilon(1e-14));
}

TEST_CASE("verify builtin probe:N=16 passes within tolerance") {
    const RunResult result = run_cli("verify probe:N=16");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["pass"] == true);
    const double residual = envelope["results"]["residual"].get<double>();
    const double dirichlet = envelope["results"]["dirichlet"].get<double>();
    CHECK(std::abs(residual) <= 1e-12 * std::max(dirichlet, 1.0));
}

TEST_CASE("verify rejects a sequence file with u_0") {
    const auto path = std::filesystem::temp_directory_path() / "hardylab_cli_bad_seq.txt";
    std::ofstream(path) << "0,1,0\n";
    const RunResult result = run_cli("verify " + path.string());
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("u_0 must be 0") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("verify reads a sequence file") {
    const auto path = std::filesystem::temp_directory_path() / "hardylab_cli_seq.txt";
    std::ofstream(path) << "# test sequence\n1,1,0\n2,1,0\n";
    const RunResult result = run_cli("verify " + path.string());
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["dirichlet"].get<double>() == 2.0);
    std::filesystem::remove(path);
}

TEST_CASE("probe 2 with chain") {
    const RunResult result = run_cli("probe 2 --chain");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["remainder"].get<double>() ==
          doctest::Approx(1.4348818850003398).epsilon(1e-12));
    CHECK(envelope["results"]["bound"].get<double>() ==
          doctest::Approx(5.7707801635558535).epsilon(1e-14));
    CHECK(envelope["results"]["terms"] == 2);
    const auto& chain = envelope["results"]["chain"];
    REQUIRE(chain.size() == 5);
    double previous = 0.0;
    for (const auto& stage : chain) {
        const double value = stage["value"].get<double>();
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("probe argument validation") {
    CHECK(run_cli("probe 1").exit_code == 2);
    CHECK(run_cli("probe 0").exit_code == 2);
}

TEST_CASE("probe respects the support cap from the environment") {
    const RunResult result = run_cli("probe 100", "HARDYLAB_SUPPORT_CAP=100");
    CHECK(result.exit_code == 3);
    const RunResult bad_env = run_cli("probe 4", "HARDYLAB_SUPPORT_CAP=zero");
    CHECK(bad_env.exit_code == 2);
}

TEST_CASE("probe 1024 meets the bound") {
    const RunResult result = run_cli("probe 1024");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["remainder"].get<double>() <= 0.5771);
}

TEST_CASE("witness 100 0.02") {
    const RunResult result = run_cli("witness 100 0.02");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["level"] == 101);
    CHECK(envelope["results"]["margin"].get<double>() > 0.0);
    CHECK(envelope["results"]["verdict"] == "inequality violated for w+eps*delta_k");
}

TEST_CASE("witness 1 2 lands at level 8") {
    const RunResult result = run_cli("witness 1 2");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["level"] == 8);
    CHECK(envelope["results"]["margin"].get<double>() > 0.0);
}

TEST_CASE("witness below the feasibility threshold reports the minimum level") {
    const RunResult result = run_cli("witness 1 0.001");
    CHECK(result.exit_code == 3);
    CHECK(result.output.find("exp(4000)") != std::string::npos);
}

TEST_CASE("spectrum of the 1x1 matrix") {
    const RunResult result = run_cli("spectrum 1 --kind kpp");
    CHECK(result.exit_code == 0);
    const json envelope = json::parse(result.output);
    CHECK(envelope["results"]["smallest_eigenvalue"].get<double>() ==
          doctest::Approx(1.4142135623730951).epsilon(1e-14));
    CHECK(envelope["results"]["psd"] == true);
}

TEST_CASE("spectrum M=2000 kpp is PSD; the bumped weight is not") {
    const RunResult clean = run_cli("spectrum 2000 --kind kpp");
    CHECK(clean.exit_code == 0);
    const json clean_env = json::parse(clean.output);
    CHECK(clean_env["results"]["smallest_eigenvalue"].get<double>() >= -1e-10);
    CHECK(clean_env["results"]["psd"] == true);

    const RunResult bumped = run_cli("spectrum 2000 --kind kpp --perturb 100:0.02");
    CHECK(bumped.exit_code == 0);
    const json bumped_env = json::parse(bumped.output);
    CHECK(bumped_env["results"]["smallest_eigenvalue"].get<double>() < 0.0);
    CHECK(bumped_env["results"]["psd"] == false);
}

TEST_CASE("spectrum usage errors") {
    CHECK(run_cli("spectrum 0").exit_code == 2);
    CHECK(run_cli("spectrum 200000").exit_code == 2);
    CHECK(run_cli("spectrum 10 --perturb nonsense").exit_code == 2);
}

TEST_CASE("envelope serialization is byte-stable") {
    const RunResult first = run_cli("verify e1");
    const RunResult second = run_cli("verify e1");
    CHECK(first.output == second.output);
    const RunResult probe_first = run_cli("probe 8 --chain");
    const RunResult probe_second = run_cli("probe 8 --chain");
    CHECK(probe_first.output == probe_second.output);
}

TEST_CASE("global mode flag is honored and validated") {
    const RunResult extended = run_cli("--mode extended --bits 128 verify e1");
    CHECK(extended.exit_code == 0);
    const json envelope = json::parse(extended.output);
    CHECK(envelope["mode"] == "extended(128)");
    CHECK(run_cli("--mode extended --bits 32 verify e1").exit_code == 2);
    CHECK(run_cli("--mode sloppy verify e1").exit_code == 2);
}

TEST_CASE("csv format flattens the envelope deterministically") {
    const RunResult result = run_cli("verify e1 --format csv");
    CHECK(result.exit_code == 0);
    const auto lines = split_lines(result.output);
    REQUIRE(lines.size() > 3);
    CHECK(lines[0] == "key,value");
    CHECK(result.output.find("results.pass,true") != std::string::npos);
    const RunResult again = run_cli("verify e1 --format csv");
    CHECK(result.output == again.output);
}
