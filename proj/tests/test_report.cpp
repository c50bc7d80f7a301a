#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "bcdiag/report.hpp"

using namespace bcdiag;
using json = nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

AnalysisConfig fast_config() {
    AnalysisConfig cfg;
    cfg.max_level = 8;
    cfg.r_max = 0.95;  // levels 3..4 in the center grid
    cfg.boundary_samples = 128;
    cfg.quadrature = QuadratureSpec{16, 64, 4, 1e-5};
    cfg.target_grid = TargetGridSpec{24, 48, 512};
    cfg.ball_grid = BallGridSpec{12, 32};
    cfg.quasigeodesic_samples = 20;
    cfg.quasigeodesic_t_max = 6.0;
    cfg.chain_length = 4;
    cfg.gce_samples = 6;
    cfg.jensen_nodes = 1 << 12;
    cfg.density_r_ladder = {0.9, 0.99, 0.999};
    cfg.alphas = {0.0, kPi / 2.0, kPi};
    cfg.seed = 7;
    return cfg;
}

}  // namespace

TEST_CASE("zeros file parsing") {
    const std::string ok = write_temp("bcdiag_zeros_ok.csv", "0.0,0.0\n0.5,0.0\n");
    const auto zeros = parse_zeros_file(ok);
    REQUIRE(zeros.size() == 2);
    CHECK(zeros[1].value() == Complex(0.5, 0.0));

    const std::string commented =
        write_temp("bcdiag_zeros_comment.csv", "# comment\n0.9,0.0\n");
    CHECK(parse_zeros_file(commented).size() == 1);

    const std::string boundary = write_temp("bcdiag_zeros_bad.csv", "1.0,0.0\n");
    CHECK_THROWS_AS(parse_zeros_file(boundary), ValidationError);

    const std::string malformed = write_temp("bcdiag_zeros_malformed.csv", "0.1,0.0\nnope\n");
    try {
        parse_zeros_file(malformed);
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);  // line number
    }
}

TEST_CASE("config validation") {
    AnalysisConfig cfg;
    cfg.zeros = {Complex(0.0, 0.0)};
    CHECK_NOTHROW(validate(cfg));

    AnalysisConfig deep = cfg;
    deep.max_level = 25;
    CHECK_THROWS_AS(validate(deep), ValidationError);

    AnalysisConfig wide = cfg;
    wide.r_max = 1.0;
    CHECK_THROWS_AS(validate(wide), ValidationError);

    AnalysisConfig edge = cfg;
    edge.zeros = {Complex(1.0 - 1e-13, 0.0)};
    CHECK_THROWS_AS(validate(edge), ValidationError);
}

TEST_CASE("config file round trip") {
    const std::string path = write_temp("bcdiag_config.json", R"({
      "zeros": [[0.0, 0.0], [0.5, 0.0]],
      "max_level": 9,
      "r_max": 0.97,
      "eps_ladder": [0.5, 0.25],
      "seed": 99
    })");
    const AnalysisConfig cfg = parse_config_file(path);
    CHECK(cfg.zeros.size() == 2);
    CHECK(cfg.max_level == 9);
    CHECK(cfg.r_max == 0.97);
    CHECK(cfg.eps_ladder.size() == 2);
    CHECK(cfg.seed == 99);
    CHECK(cfg.base_level == 3);  // untouched default

    const std::string bad = write_temp("bcdiag_config_bad.json", "{ not json");
    CHECK_THROWS_AS(parse_config_file(bad), ValidationError);
}

TEST_CASE("battery on the identity map") {
    AnalysisConfig cfg = fast_config();
    cfg.zeros = {Complex(0.0, 0.0)};
    const Report report = run_battery(cfg);
    CHECK_FALSE(report.numerical_failure);

    const json doc = json::parse(report.json);
    const auto& sections = doc.at("sections");
    for (const char* name :
         {"condition_1_bounded_compression", "condition_2_descent",
          "condition_3_quasigeodesic", "condition_4_clark", "condition_5a_blaschke",
          "condition_5b_carleson", "condition_5c_light_subsquare",
          "condition_6_critical_set", "supplementary"}) {
        REQUIRE(sections.contains(name));
        CHECK_FALSE(sections.at(name).empty());
    }

    const auto& ball = sections.at("condition_1_bounded_compression");
    CHECK(ball.at("c1_min_diameter").get<double>() == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(ball.at("c4_min_max_derivative").get<double>() == doctest::Approx(1.0));
    CHECK(sections.at("condition_3_quasigeodesic").at("min_fitted_s").get<double>() ==
          doctest::Approx(1.0));

    // every heavy arc of a point mass admits a light sub-arc
    for (const auto& alpha_entry : sections.at("condition_4_clark").at("per_alpha")) {
        for (const auto& eps_entry : alpha_entry.at("per_eps")) {
            CHECK(eps_entry.at("subarc_found") == eps_entry.at("heavy_arcs_searched"));
        }
    }

    // degree 1: no critical points, density zero
    const auto& crit = sections.at("condition_6_critical_set");
    CHECK(crit.at("critical_points").get<int>() == 0);
    CHECK(crit.at("uniform_upper_density").at("d_plus").get<double>() == 0.0);

    CHECK(doc.at("grids").contains("image_diameter_center_grid"));
}

TEST_CASE("battery on z^2 exercises the critical set sections") {
    AnalysisConfig cfg = fast_config();
    cfg.zeros = {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    const Report report = run_battery(cfg);
    const json doc = json::parse(report.json);
    const auto& sections = doc.at("sections");

    const auto& crit = sections.at("condition_6_critical_set");
    CHECK(crit.at("critical_points").get<int>() == 1);
    for (const auto& sample : crit.at("gauss_curvature").at("samples")) {
        CHECK(sample.at("ratio").get<double>() == doctest::Approx(4.0).epsilon(0.3));
    }
    // distortion profile stays positive away from the critical point
    for (const auto& row :
         sections.at("condition_1_bounded_compression").at("condition_1f_distortion_profile")) {
        CHECK(row.at("delta").get<double>() > 0.0);
    }
    // jensen is rejected for z^2 (F'(0) = 0) and recorded as skipped
    CHECK(sections.at("supplementary").at("jensen").contains("skipped"));
}

TEST_CASE("battery flags a clustered zero set") {
    AnalysisConfig cfg = fast_config();
    // comb of zeros filling the dyadic subtree under the first level-3 square
    cfg.zeros.clear();
    for (int level = 4; level <= 8; ++level) {
        const std::int64_t count = std::int64_t{1} << (level - 3);
        for (std::int64_t k = 0; k < count; ++k) {
            const SquareGeometry g = square_geometry(make_square(level, k));
            cfg.zeros.push_back(g.center.value());
        }
    }
    cfg.light_search_max_depth = 3;  // depth-limited search saturates
    cfg.eps_ladder = {0.5, 0.1};
    const Report report = run_battery(cfg);
    const json doc = json::parse(report.json);
    const auto& sections = doc.at("sections");

    CHECK(sections.at("condition_5b_carleson").at("carleson_constant").get<double>() > 1.0);
    bool some_failed = false;
    for (const auto& eps_entry : sections.at("condition_5c_light_subsquare").at("per_eps")) {
        if (eps_entry.at("subsquare_found").get<int>() <
            eps_entry.at("heavy_squares_searched").get<int>()) {
            some_failed = true;
        }
    }
    CHECK(some_failed);
}

TEST_CASE("report emission and grid CSVs") {
    AnalysisConfig cfg = fast_config();
    cfg.zeros = {Complex(0.0, 0.0)};
    const Report report = run_battery(cfg);

    const auto dir = std::filesystem::temp_directory_path() / "bcdiag_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string report_path = (dir / "report.json").string();
    emit_report(report, report_path);
    std::ifstream in(report_path, std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == report.json);
    const json round_trip = json::parse(body);
    CHECK(round_trip.contains("sections"));

    emit_grids(report, (dir / "grids").string());
    std::ifstream grid(dir / "grids" / "image_diameter_center_grid.csv");
    REQUIRE(grid.good());
    std::string header;
    std::getline(grid, header);
    CHECK(header == "key,value");
    std::string first_row;
    std::getline(grid, first_row);
    CHECK(first_row.find(',') != std::string::npos);
}

TEST_CASE("battery output is deterministic") {
    AnalysisConfig cfg = fast_config();
    cfg.zeros = {Complex(0.2, 0.1), Complex(-0.4, 0.3), Complex(0.0, -0.5)};
    const Report a = run_battery(cfg);
    const Report b = run_battery(cfg);
    CHECK(a.json == b.json);
}
