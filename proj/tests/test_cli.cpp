#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd =
        std::string(LIGHTSHIFT_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("scan-theta emits a well-formed CSV table") {
    const auto r = run_cli("scan-theta --qubit clock --resolution-deg 0.1");
    REQUIRE(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 901);  // header + 900 rows
    CHECK(lines[0] ==
          "theta_deg,eps_plus_sq,eps_minus_sq,second_scalar_hz,second_vector_hz,fourth_hz,total_hz");
    bool found = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto cols = split(lines[i], ',');
        REQUIRE(cols.size() == 7);
        if (cols[0] == "22.500") {
            found = true;
            CHECK_THAT(std::stod(cols[2]), WithinAbs(1.0, 1e-9));  // pure sigma-
            CHECK_THAT(std::stod(cols[6]), WithinRel(1.7295e4, 3e-3));
        }
    }
    CHECK(found);
}

TEST_CASE("scan-intensity includes the sigma asymmetry column for the clock") {
    const auto r = run_cli("scan-intensity --qubit clock --theta-deg 22.5 --powers-mw 10 52.1");
    REQUIRE(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "power_mW,intensity_W_m2,total_hz,d_sigma_hz");
    const auto cols = split(lines[2], ',');
    REQUIRE(cols.size() == 4);
    CHECK_THAT(std::stod(cols[1]), WithinRel(3.3845e8, 1e-3));

    const auto z = run_cli("scan-intensity --qubit zeeman+ --theta-deg 30 --powers-mw 10");
    REQUIRE(z.exit_code == 0);
    CHECK(data_lines(z.out)[0] == "power_mW,intensity_W_m2,total_hz");
}

TEST_CASE("find-magic reports the Zeeman minimum at linear polarization") {
    const auto r = run_cli("find-magic --qubit zeeman+");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK_THAT(doc.at("theta_min_deg").get<double>(), WithinAbs(45.0, 1e-3));
    CHECK_THAT(doc.at("shift_at_min_hz").get<double>(), WithinAbs(0.0, 1e-6));
    CHECK(!doc.at("zero_crossings").empty());
}

TEST_CASE("threshold-field reproduces the reference threshold") {
    const auto r = run_cli("threshold-field");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK_THAT(doc.at("threshold_gauss").get<double>(), WithinRel(15.5578, 1e-3));
}

TEST_CASE("dressed-states lists the hyperfine gap") {
    const auto r = run_cli("dressed-states --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    double e00 = 0, e10 = 0;
    for (const auto& s : doc.at("states")) {
        if (s.at("label") == "F0m0") e00 = s.at("energy_MHz").get<double>();
        if (s.at("label") == "F1m0") e10 = s.at("energy_MHz").get<double>();
    }
    CHECK_THAT(e10 - e00, WithinRel(12642.812, 1e-4));
    CHECK_THAT(doc.at("mixing_ratio").get<double>(), WithinRel(1.2557e-3, 1e-3));
}

TEST_CASE("ramsey output is byte-stable for a fixed seed") {
    const std::string args =
        "ramsey --qubit zeeman+ --theta-deg 30 --sigma-i 0.02 --shots 200 --tau-points 8 "
        "--tau-min-s 1e-5 --tau-max-s 5e-4 --seed 42";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto lines = data_lines(a.out);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "tau_s,contrast,contrast_err");
    for (size_t i = 1; i < lines.size(); ++i) REQUIRE(split(lines[i], ',').size() == 3);
}

TEST_CASE("config file values apply and CLI flags override them") {
    {
        std::ofstream f("cli_test_config.tmp");
        f << R"({"B_gauss": 20.0, "power_mW": 10.0})";
    }
    const auto r = run_cli("--config cli_test_config.tmp find-magic --qubit clock");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("config").at("B_gauss").get<double>() == 20.0);
    CHECK(doc.at("config").at("power_mW").get<double>() == 10.0);

    const auto o = run_cli("--config cli_test_config.tmp --b-gauss 25 find-magic --qubit clock");
    REQUIRE(o.exit_code == 0);
    CHECK(json::parse(o.out).at("config").at("B_gauss").get<double>() == 25.0);
}

TEST_CASE("error paths map to the documented exit codes") {
    CHECK(run_cli("scan-theta --no-such-flag").exit_code == 2);
    CHECK(run_cli("scan-theta --qubit bogus").exit_code == 2);
    CHECK(run_cli("scan-theta --resolution-deg -1").exit_code == 2);
    CHECK(run_cli("--species /no/such/file.json scan-theta").exit_code == 3);
    CHECK(run_cli("--config /no/such/config.json scan-theta").exit_code == 3);
    CHECK(run_cli("threshold-field --b-min 1 --b-max 5").exit_code == 4);
}

TEST_CASE("custom species files load through the CLI") {
    {
        std::ofstream f("cli_test_species.tmp");
        f << R"({"name":"171Yb+","omega_hf_GHz":12.642812,"gamma_half_MHz":19.703,)"
          << R"("gamma_three_half_MHz":25.895,"isat_half_W_m2":510.3,)"
          << R"("isat_three_half_W_m2":950.6,"delta_half_THz":33,"delta_three_half_THz":-67})";
    }
    const auto r = run_cli("--species cli_test_species.tmp threshold-field");
    REQUIRE(r.exit_code == 0);
    CHECK_THAT(json::parse(r.out).at("threshold_gauss").get<double>(), WithinRel(15.5578, 1e-3));
}
