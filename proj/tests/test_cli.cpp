#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef BCDIAG_CLI_PATH
#error "BCDIAG_CLI_PATH must point at the bcdiag binary"
#endif

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "bcdiag_cli_test";

std::string path_of(const std::string& name) { return (kDir / name).string(); }

int run(const std::string& args) {
    const std::string cmd = std::string(BCDIAG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Setup {
    Setup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
        std::ofstream zeros(path_of("zeros.csv"));
        zeros << "# two zeros\n0.0,0.0\n0.5,0.0\n";
        std::ofstream bad(path_of("bad.csv"));
        bad << "1.0,0.0\n";
        std::ofstream config(path_of("config.json"));
        config << R"({
          "zeros": [[0.0,0.0],[0.5,0.0]],
          "max_level": 8, "r_max": 0.95, "boundary_samples": 128,
          "quadrature": {"radial": 16, "angular": 64, "max_refine": 4, "rel_tol": 1e-5},
          "target_grid": {"radial": 24, "angular": 48, "boundary_nodes": 512},
          "ball_grid": {"radial": 12, "angular": 32},
          "quasigeodesic_samples": 20, "chain_length": 4,
          "gce_samples": 4, "jensen_nodes": 4096,
          "alphas": [0.0, 3.141592653589793],
          "seed": 11
        })";
    }
} setup;

}  // namespace

TEST_CASE("analyze produces a schema-versioned report and deterministic bytes") {
    REQUIRE(run("analyze --config " + path_of("config.json") + " --out " +
                path_of("report1.json") + " --grids " + path_of("grids")) == 0);
    REQUIRE(run("analyze --config " + path_of("config.json") + " --out " +
                path_of("report2.json")) == 0);
    const std::string a = slurp(path_of("report1.json"));
    CHECK(a == slurp(path_of("report2.json")));
    const json doc = json::parse(a);
    CHECK(doc.at("schema_version") == "1");
    CHECK(doc.at("sections").contains("condition_2_descent"));
    CHECK(fs::exists(kDir / "grids" / "descent_ratio_per_square.csv"));
}

TEST_CASE("analyze accepts zeros files and overrides") {
    REQUIRE(run("analyze --zeros " + path_of("zeros.csv") +
                " --rmax 0.95 --max-level 8 --seed 3 --out " + path_of("report3.json")) == 0);
    const json doc = json::parse(slurp(path_of("report3.json")));
    CHECK(doc.at("config").at("seed") == 3);
    CHECK(doc.at("config").at("zeros").size() == 2);
}

TEST_CASE("input validation maps to exit code 1") {
    CHECK(run("analyze --zeros " + path_of("bad.csv")) == 1);
    CHECK(run("clark --zeros " + path_of("missing.csv")) == 1);
}

TEST_CASE("clark subcommand") {
    REQUIRE(run("clark --zeros " + path_of("zeros.csv") + " --alpha 0 --out " +
                path_of("clark.json")) == 0);
    const json doc = json::parse(slurp(path_of("clark.json")));
    CHECK(doc.at("degree") == 2);
    CHECK(doc.at("atoms").size() == 2);
    double mass = 0.0;
    for (const auto& atom : doc.at("atoms")) mass += atom.at("mass").get<double>();
    CHECK(mass == doctest::Approx(doc.at("total_mass").get<double>()));
}

TEST_CASE("density subcommand") {
    REQUIRE(run("density --zeros " + path_of("zeros.csv") + " --rmax 0.999 --out " +
                path_of("density.json")) == 0);
    const json doc = json::parse(slurp(path_of("density.json")));
    CHECK(doc.at("points") == 2);
    CHECK(doc.at("d_plus").get<double>() >= 0.0);
}

TEST_CASE("descent subcommand") {
    REQUIRE(run("descent --zeros " + path_of("zeros.csv") +
                " --level 3 --index 0 --eps 0.5 --out " + path_of("descent.json")) == 0);
    const json doc = json::parse(slurp(path_of("descent.json")));
    CHECK(doc.at("found") == true);
    CHECK(doc.at("depth").get<int>() >= 1);
}

TEST_CASE("diameter subcommand") {
    REQUIRE(run("diameter --zeros " + path_of("zeros.csv") + " --z 0.0,0.0 --out " +
                path_of("diameter.json")) == 0);
    const json doc = json::parse(slurp(path_of("diameter.json")));
    CHECK(doc.at("diameter").get<double>() > 0.0);
}
