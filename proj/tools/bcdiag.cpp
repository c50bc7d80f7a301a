// Command line front end: analyze (full battery), clark, density, descent,
// diameter. Exit codes: 0 success, 1 input/validation error, 2 numerical
// failure in any section.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcdiag/clark.hpp"
#include "bcdiag/report.hpp"

using namespace bcdiag;
using ordered_json = nlohmann::ordered_json;

namespace {

void write_output(const ordered_json& doc, const std::string& out_path) {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output path: " + out_path);
    out << text;
    if (!out) throw ValidationError("write failed: " + out_path);
}

Complex parse_complex(const std::string& text) {
    double re = 0.0, im = 0.0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), " %lf , %lf %c", &re, &im, &tail) != 2) {
        throw ValidationError("expected 're,im', got '" + text + "'");
    }
    return {re, im};
}

BlaschkeProduct load_product(const std::string& zeros_path, double prefactor) {
    return BlaschkeProduct(parse_zeros_file(zeros_path), prefactor);
}

ordered_json atoms_json(const CircleMeasure& mu) {
    ordered_json atoms = ordered_json::array();
    for (const auto& a : mu.atoms) {
        atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
    }
    return atoms;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical diagnostics for analytic self-maps of the unit disk "
                 "given as finite Blaschke products"};
    app.require_subcommand(1);

    std::string zeros_path, config_path, out_path, grids_dir, z_text;
    double prefactor = 0.0, rmax = -1.0, alpha_one = 0.0, eps = 0.5, radius = 1.0;
    std::vector<double> alphas;
    int max_level = -1, level = 3, samples = 512, n_max = 8;
    std::int64_t index = 0;
    std::uint64_t seed = 1;
    bool seed_set = false, rmax_set = false, alpha_set = false;

    auto* analyze = app.add_subcommand("analyze", "Run the full condition battery");
    analyze->add_option("--zeros", zeros_path, "zeros CSV file (re,im per line)");
    analyze->add_option("--config", config_path, "config JSON file");
    analyze->add_option("--prefactor", prefactor, "prefactor angle (radians)");
    analyze->add_option("--alpha", alphas, "Clark base angles (radians, repeatable)");
    analyze->add_option("--rmax", rmax, "grid radius cap")->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--max-level", max_level, "deepest dyadic level");
    analyze->add_option("--out", out_path, "report path (stdout if omitted)");
    analyze->add_option("--grids", grids_dir, "directory for plot-ready grid CSVs");
    analyze->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* clark = app.add_subcommand("clark", "Aleksandrov-Clark measure of the product");
    clark->add_option("--zeros", zeros_path)->required();
    clark->add_option("--prefactor", prefactor);
    clark->add_option("--alpha", alpha_one, "base angle (radians)")->each([&](const std::string&) {
        alpha_set = true;
    });
    clark->add_option("--out", out_path);

    auto* density = app.add_subcommand("density", "Uniform upper density of a point set");
    density->add_option("--zeros", zeros_path, "points CSV file")->required();
    density->add_option("--rmax", rmax, "top ladder rung")->each([&](const std::string&) {
        rmax_set = true;
    });
    density->add_option("--out", out_path);

    auto* descent = app.add_subcommand("descent", "Hyperbolic descent witness for a square");
    descent->add_option("--zeros", zeros_path)->required();
    descent->add_option("--prefactor", prefactor);
    descent->add_option("--level", level, "square level");
    descent->add_option("--index", index, "square index");
    descent->add_option("--eps", eps, "descent factor in (0,1)");
    descent->add_option("--nmax", n_max, "depth budget");
    descent->add_option("--out", out_path);

    auto* diameter = app.add_subcommand("diameter", "Hyperbolic diameter of F(B_h(z,R))");
    diameter->add_option("--zeros", zeros_path)->required();
    diameter->add_option("--prefactor", prefactor);
    diameter->add_option("--z", z_text, "ball center as re,im")->required();
    diameter->add_option("--radius", radius, "hyperbolic radius");
    diameter->add_option("--samples", samples, "boundary samples");
    diameter->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            AnalysisConfig cfg;
            if (!config_path.empty()) cfg = parse_config_file(config_path);
            if (!zeros_path.empty()) {
                cfg.zeros.clear();
                for (const DiskPoint& p : parse_zeros_file(zeros_path)) {
                    cfg.zeros.push_back(p.value());
                }
                cfg.prefactor_angle = prefactor;
            }
            if (!alphas.empty()) cfg.alphas = alphas;
            if (rmax > 0.0) cfg.r_max = rmax;
            if (max_level > 0) cfg.max_level = max_level;
            if (seed_set) cfg.seed = seed;
            const Report report = run_battery(cfg);
            if (out_path.empty()) {
                std::cout << report.json;
            } else {
                emit_report(report, out_path);
            }
            if (!grids_dir.empty()) emit_grids(report, grids_dir);
            return report.numerical_failure ? 2 : 0;
        }
        if (clark->parsed()) {
            const BlaschkeProduct F = load_product(zeros_path, prefactor);
            const double a = alpha_set ? alpha_one : 0.0;
            const CircleMeasure mu = clark_measure(F, BoundaryPoint(a));
            ordered_json doc;
            doc["alpha_angle"] = a;
            doc["degree"] = F.degree();
            doc["atoms"] = atoms_json(mu);
            doc["total_mass"] = mu.total_mass();
            doc["herglotz_constant"] = mu.herglotz_constant;
            write_output(doc, out_path);
            return 0;
        }
        if (density->parsed()) {
            DiscreteSet set;
            set.points = parse_zeros_file(zeros_path);
            const double top = rmax_set ? rmax : 0.9999;
            std::vector<double> ladder;
            for (double r = 0.9; r < top; r = 1.0 - (1.0 - r) / 10.0) ladder.push_back(r);
            ladder.push_back(top);
            const DensityEstimate est = uniform_upper_density(set, AGridSpec{}, ladder);
            ordered_json doc;
            doc["points"] = set.points.size();
            doc["r_ladder"] = est.r_ladder;
            doc["a_grid_points"] = est.a_grid.size();
            doc["d_plus"] = est.d_plus;
            ordered_json rows = ordered_json::array();
            for (size_t i = 0; i < est.a_grid.size(); ++i) {
                rows.push_back({{"a", ordered_json::array({est.a_grid[i].value().real(),
                                                           est.a_grid[i].value().imag()})},
                                {"values", est.values[i]}});
            }
            doc["matrix"] = rows;
            write_output(doc, out_path);
            return 0;
        }
        if (descent->parsed()) {
            const BlaschkeProduct F = load_product(zeros_path, prefactor);
            const DyadicSquare q = make_square(level, index);
            const auto witness = descent_search(F, q, eps, n_max);
            ordered_json doc;
            doc["parent"] = {{"level", q.level}, {"index", q.index}};
            doc["eps"] = eps;
            if (witness) {
                doc["found"] = true;
                doc["child"] = {{"level", witness->child.level}, {"index", witness->child.index}};
                doc["depth"] = witness->depth;
                doc["ratio"] = witness->ratio;
            } else {
                doc["found"] = false;
            }
            write_output(doc, out_path);
            return 0;
        }
        if (diameter->parsed()) {
            const BlaschkeProduct F = load_product(zeros_path, prefactor);
            const DiskPoint z(parse_complex(z_text));
            ordered_json doc;
            doc["z"] = ordered_json::array({z.value().real(), z.value().imag()});
            doc["radius"] = radius;
            doc["samples"] = samples;
            doc["diameter"] = image_diameter(F, z, radius, samples);
            write_output(doc, out_path);
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
