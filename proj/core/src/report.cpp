#include "bcdiag/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bcdiag/clark.hpp"

namespace bcdiag {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0.0 ? "infinity" : "-infinity";
}

std::string square_label(const DyadicSquare& q) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "L%d.I%lld", q.level, static_cast<long long>(q.index));
    return buf;
}

ordered_json complex_pair(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json config_to_json(const AnalysisConfig& c) {
    ordered_json j;
    ordered_json zs = ordered_json::array();
    for (const Complex& z : c.zeros) zs.push_back(complex_pair(z));
    j["zeros"] = zs;
    j["prefactor_angle"] = c.prefactor_angle;
    j["alphas"] = c.alphas;
    j["base_level"] = c.base_level;
    j["max_level"] = c.max_level;
    j["r_max"] = c.r_max;
    j["boundary_samples"] = c.boundary_samples;
    j["ball_radius"] = c.ball_radius;
    j["quadrature"] = {{"radial", c.quadrature.radial},
                       {"angular", c.quadrature.angular},
                       {"max_refine", c.quadrature.max_refine},
                       {"rel_tol", c.quadrature.rel_tol}};
    j["target_grid"] = {{"radial", c.target_grid.radial},
                        {"angular", c.target_grid.angular},
                        {"boundary_nodes", c.target_grid.boundary_nodes}};
    j["ball_grid"] = {{"radial", c.ball_grid.radial}, {"angular", c.ball_grid.angular}};
    j["containment_resolution"] = c.containment_resolution;
    j["eps_ladder"] = c.eps_ladder;
    j["descent_n_max"] = c.descent_n_max;
    j["chain_length"] = c.chain_length;
    j["descent_sweep_max_level"] = c.descent_sweep_max_level;
    j["quasigeodesic_t_max"] = c.quasigeodesic_t_max;
    j["quasigeodesic_samples"] = c.quasigeodesic_samples;
    j["quasigeodesic_c_cap"] = c.quasigeodesic_c_cap;
    j["distortion_eps"] = c.distortion_eps;
    j["density_a_max_level"] = c.density_a_max_level;
    j["density_r_ladder"] = c.density_r_ladder;
    j["holder_r_ladder"] = c.holder_r_ladder;
    j["light_subarc_delta_min"] = c.light_subarc_delta_min;
    j["light_search_max_depth"] = c.light_search_max_depth;
    j["gce_h"] = c.gce_h;
    j["gce_samples"] = c.gce_samples;
    j["jensen_r"] = c.jensen_r;
    j["jensen_nodes"] = c.jensen_nodes;
    j["seed"] = c.seed;
    return j;
}

std::vector<double> default_alphas() {
    std::vector<double> a(8);
    for (int k = 0; k < 8; ++k) a[static_cast<size_t>(k)] = kTwoPi * k / 8.0;
    return a;
}

std::vector<double> default_holder_ladder() {
    std::vector<double> r;
    for (int k = 4; k <= 24; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
    return r;
}

std::vector<DyadicSquare> square_sweep(int base_level, int max_level) {
    std::vector<DyadicSquare> squares;
    for (int level = base_level; level <= max_level; ++level) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            squares.push_back(make_square(level, k, base_level));
        }
    }
    return squares;
}

}  // namespace

void validate(const AnalysisConfig& c) {
    if (c.zeros.empty()) throw ValidationError("config: at least one zero is required");
    for (const Complex& z : c.zeros) {
        if (!(std::abs(z) < 1.0 - kDiskMargin)) {
            throw ValidationError("config: zero outside the admissible disk");
        }
    }
    if (c.base_level < 3 || c.max_level > 24 || c.max_level < c.base_level) {
        throw ValidationError("config: levels must satisfy 3 <= base_level <= max_level <= 24");
    }
    if (!(c.r_max > 0.0 && c.r_max < 1.0 - kDiskMargin)) {
        throw ValidationError("config: r_max must lie in (0, 1) within the margin");
    }
    if (c.boundary_samples < 64) throw ValidationError("config: boundary_samples < 64");
    if (!(c.ball_radius > 0.0)) throw ValidationError("config: ball_radius must be positive");
    for (double e : c.eps_ladder) {
        if (!(e > 0.0 && e < 1.0)) throw ValidationError("config: eps ladder entries must lie in (0,1)");
    }
    for (double r : c.density_r_ladder) {
        if (!(r > 0.5 && r < 1.0 - kDiskMargin)) {
            throw ValidationError("config: density ladder must lie in (1/2, 1) within the margin");
        }
    }
    for (double r : c.holder_r_ladder) {
        if (!(r > 0.0 && r < 1.0 - kDiskMargin)) {
            throw ValidationError("config: holder ladder must stay within the margin");
        }
    }
    if (!(c.jensen_r > 0.0 && c.jensen_r < 1.0)) {
        throw ValidationError("config: jensen_r must lie in (0,1)");
    }
}

std::vector<DiskPoint> parse_zeros_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open zeros file: " + path);
    std::vector<DiskPoint> zeros;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        double re = 0.0, im = 0.0;
        char tail = '\0';
        const int got = std::sscanf(line.c_str(), " %lf , %lf %c", &re, &im, &tail);
        if (got != 2) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected 're,im'");
        }
        if (!(std::abs(Complex(re, im)) < 1.0 - kDiskMargin)) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": point outside the admissible disk");
        }
        zeros.emplace_back(re, im);
    }
    if (zeros.empty()) throw ValidationError(path + ": no zeros found");
    return zeros;
}

AnalysisConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("config parse error in " + path + ": " + e.what());
    }

    AnalysisConfig c;
    try {
        if (j.contains("zeros")) {
            c.zeros.clear();
            for (const auto& z : j["zeros"]) {
                c.zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
            }
        }
        auto get = [&j](const char* key, auto& field) {
            if (j.contains(key)) field = j[key].template get<std::decay_t<decltype(field)>>();
        };
        get("prefactor_angle", c.prefactor_angle);
        get("alphas", c.alphas);
        get("base_level", c.base_level);
        get("max_level", c.max_level);
        get("r_max", c.r_max);
        get("boundary_samples", c.boundary_samples);
        get("ball_radius", c.ball_radius);
        if (j.contains("quadrature")) {
            const auto& q = j["quadrature"];
            if (q.contains("radial")) c.quadrature.radial = q["radial"].get<int>();
            if (q.contains("angular")) c.quadrature.angular = q["angular"].get<int>();
            if (q.contains("max_refine")) c.quadrature.max_refine = q["max_refine"].get<int>();
            if (q.contains("rel_tol")) c.quadrature.rel_tol = q["rel_tol"].get<double>();
        }
        if (j.contains("target_grid")) {
            const auto& t = j["target_grid"];
            if (t.contains("radial")) c.target_grid.radial = t["radial"].get<int>();
            if (t.contains("angular")) c.target_grid.angular = t["angular"].get<int>();
            if (t.contains("boundary_nodes")) {
                c.target_grid.boundary_nodes = t["boundary_nodes"].get<int>();
            }
        }
        if (j.contains("ball_grid")) {
            const auto& b = j["ball_grid"];
            if (b.contains("radial")) c.ball_grid.radial = b["radial"].get<int>();
            if (b.contains("angular")) c.ball_grid.angular = b["angular"].get<int>();
        }
        get("containment_resolution", c.containment_resolution);
        get("eps_ladder", c.eps_ladder);
        get("descent_n_max", c.descent_n_max);
        get("chain_length", c.chain_length);
        get("descent_sweep_max_level", c.descent_sweep_max_level);
        get("quasigeodesic_t_max", c.quasigeodesic_t_max);
        get("quasigeodesic_samples", c.quasigeodesic_samples);
        get("quasigeodesic_c_cap", c.quasigeodesic_c_cap);
        get("distortion_eps", c.distortion_eps);
        get("density_a_max_level", c.density_a_max_level);
        get("density_r_ladder", c.density_r_ladder);
        get("holder_r_ladder", c.holder_r_ladder);
        get("light_subarc_delta_min", c.light_subarc_delta_min);
        get("light_search_max_depth", c.light_search_max_depth);
        get("gce_h", c.gce_h);
        get("gce_samples", c.gce_samples);
        get("jensen_r", c.jensen_r);
        get("jensen_nodes", c.jensen_nodes);
        get("seed", c.seed);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ValidationError("config field error in " + path + ": " + e.what());
    }
    return c;
}

Report run_battery(const AnalysisConfig& cfg_in) {
    AnalysisConfig cfg = cfg_in;
    if (cfg.alphas.empty()) cfg.alphas = default_alphas();
    if (cfg.holder_r_ladder.empty()) cfg.holder_r_ladder = default_holder_ladder();
    validate(cfg);

    std::vector<DiskPoint> zero_points;
    zero_points.reserve(cfg.zeros.size());
    for (const Complex& z : cfg.zeros) zero_points.emplace_back(z);
    const BlaschkeProduct F(zero_points, cfg.prefactor_angle);

    ordered_json doc;
    doc["schema_version"] = "1";
    doc["generator"] = "bcdiag";
    doc["config"] = config_to_json(cfg);
    doc["provenance"] = {
        {"dyadic_restriction",
         "descent, heavy-square and heavy-arc searches range over dyadic squares and "
         "dyadic sub-arcs only; the defining statements allow arbitrary ones"},
        {"center_grid",
         "dyadic square centers with level <= max_level and |z_Q| <= r_max, plus the origin"},
        {"grid_limits",
         "all 'for all z' statistics are minima over the finite center grid up to r_max; "
         "no extrapolation toward the boundary is attempted"}};

    bool failure = false;
    ordered_json sections;
    auto guarded = [&failure](ordered_json& slot, auto&& fn) {
        try {
            slot = fn();
        } catch (const NumericalError& e) {
            slot = ordered_json{{"skipped", std::string("numerical failure: ") + e.what()}};
            failure = true;
        } catch (const ValidationError& e) {
            slot = ordered_json{{"skipped", std::string("precondition: ") + e.what()}};
        }
    };

    const std::vector<DiskPoint> centers =
        center_grid(cfg.base_level, cfg.max_level, cfg.r_max);

    ordered_json grids;

    // Conditions (1), (1a)-(1f): ball statistics over the center grid.
    ordered_json ball_section;
    guarded(ball_section, [&]() {
        BallSweepSpec spec;
        spec.radius = cfg.ball_radius;
        spec.boundary_samples = cfg.boundary_samples;
        spec.quadrature = cfg.quadrature;
        spec.target_grid = cfg.target_grid;
        spec.ball_grid = cfg.ball_grid;
        spec.containment_resolution = cfg.containment_resolution;
        spec.distortion_eps = cfg.distortion_eps;
        spec.r_max = cfg.r_max;
        const ConditionReport rep = ball_condition_report(F, centers, spec);

        ordered_json dh_grid = ordered_json::array();
        ordered_json diam_grid = ordered_json::array();
        for (size_t i = 0; i < centers.size(); ++i) {
            dh_grid.push_back(ordered_json::array(
                {rep.labels[i], num(F.hyperbolic_derivative(centers[i].value()))}));
            diam_grid.push_back(ordered_json::array({rep.labels[i], num(rep.diameter[i])}));
        }
        grids["hyperbolic_derivative_center_grid"] = dh_grid;
        grids["image_diameter_center_grid"] = diam_grid;

        ordered_json s;
        s["ball_radius"] = cfg.ball_radius;
        s["grid_points"] = centers.size();
        s["c1_min_diameter"] = num(rep.c1_min_diameter);
        s["c2_min_area"] = num(rep.c2_min_area);
        s["c3_min_area_with_multiplicity"] = num(rep.c3_min_area_mult);
        s["c4_min_max_derivative"] = num(rep.c4_min_max_derivative);
        s["c5_min_containment_radius"] = num(rep.c5_min_containment);
        ordered_json distortion = ordered_json::array();
        for (const auto& [eps, delta] : rep.distortion) {
            distortion.push_back({{"eps", eps}, {"delta", num(delta)}});
        }
        s["condition_1f_distortion_profile"] = distortion;
        return s;
    });
    sections["condition_1_bounded_compression"] = ball_section;

    // Condition (2): hyperbolic descent over a square sweep.
    guarded(sections["condition_2_descent"], [&]() {
        const int sweep_max = std::min(cfg.descent_sweep_max_level, cfg.max_level);
        const auto squares = square_sweep(cfg.base_level, sweep_max);
        ordered_json per_eps = ordered_json::array();
        ordered_json ratio_grid = ordered_json::array();
        for (double eps : cfg.eps_ladder) {
            int found = 0;
            int worst_depth = 0;
            double worst_ratio = 0.0;
            std::string worst_square;
            ordered_json missing = ordered_json::array();
            for (const DyadicSquare& q : squares) {
                const auto w = descent_search(F, q, eps, cfg.descent_n_max);
                if (w) {
                    ++found;
                    if (eps == cfg.eps_ladder.front()) {
                        ratio_grid.push_back(
                            ordered_json::array({square_label(q), num(w->ratio)}));
                    }
                    if (w->depth > worst_depth ||
                        (w->depth == worst_depth && w->ratio > worst_ratio)) {
                        worst_depth = w->depth;
                        worst_ratio = w->ratio;
                        worst_square = square_label(q);
                    }
                } else {
                    missing.push_back(square_label(q));
                }
            }
            per_eps.push_back({{"eps", eps},
                               {"squares", squares.size()},
                               {"witness_found", found},
                               {"max_depth_needed", worst_depth},
                               {"worst_square", worst_square},
                               {"worst_ratio", num(worst_ratio)},
                               {"squares_without_witness", missing}});
        }
        grids["descent_ratio_per_square"] = ratio_grid;
        ordered_json s;
        s["n_max"] = cfg.descent_n_max;
        s["per_eps"] = per_eps;
        return s;
    });

    // Condition (3): descent chain endpoints + quasigeodesic fits over the grid.
    guarded(sections["condition_3_quasigeodesic"], [&]() {
        double min_s = 1.0;
        double max_c = 0.0;
        int incomplete = 0;
        double worst_s = 2.0, worst_c = -1.0;
        Complex worst_z = 0.0;
        double worst_endpoint = 0.0;
        for (const DiskPoint& z : centers) {
            const DescentChain chain =
                descent_chain(F, z, cfg.eps_ladder.front(), cfg.chain_length,
                              cfg.descent_n_max, cfg.base_level);
            if (!chain.complete) ++incomplete;
            const QuasigeodesicFit fit =
                quasigeodesic_fit(F, z, chain.endpoint, cfg.quasigeodesic_t_max,
                                  cfg.quasigeodesic_samples, cfg.quasigeodesic_c_cap);
            if (fit.s < worst_s || (fit.s == worst_s && fit.c > worst_c)) {
                worst_s = fit.s;
                worst_c = fit.c;
                worst_z = z.value();
                worst_endpoint = chain.endpoint.angle;
            }
            min_s = std::min(min_s, fit.s);
            max_c = std::max(max_c, fit.c);
        }
        ordered_json s;
        s["chain_eps"] = cfg.eps_ladder.front();
        s["chain_length"] = cfg.chain_length;
        s["incomplete_chains"] = incomplete;
        s["min_fitted_s"] = num(min_s);
        s["max_fitted_c"] = num(max_c);
        s["c_cap"] = cfg.quasigeodesic_c_cap;
        s["worst_base_point"] = complex_pair(worst_z);
        s["worst_ray_endpoint_angle"] = num(worst_endpoint);
        return s;
    });

    // Condition (4): Clark measures, heavy arcs, light sub-arc searches.
    guarded(sections["condition_4_clark"], [&]() {
        ordered_json per_alpha = ordered_json::array();
        for (double alpha : cfg.alphas) {
            const CircleMeasure mu = clark_measure(F, BoundaryPoint(alpha));
            int heavy_count = 0;
            ordered_json per_eps = ordered_json::array();
            struct EpsStat {
                int searched = 0;
                int found = 0;
                double min_delta = 1.0;
            };
            std::vector<EpsStat> stats(cfg.eps_ladder.size());
            for (int level = cfg.base_level; level <= cfg.max_level; ++level) {
                const double len = std::ldexp(1.0, -level);
                for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
                    const Arc arc(kTwoPi * (static_cast<double>(k) + 0.5) * len, len);
                    if (!is_heavy_arc(mu, arc).heavy) continue;
                    ++heavy_count;
                    for (size_t e = 0; e < cfg.eps_ladder.size(); ++e) {
                        ++stats[e].searched;
                        const auto sub = light_subarc_search(mu, arc, cfg.eps_ladder[e],
                                                             cfg.light_subarc_delta_min);
                        if (sub) {
                            ++stats[e].found;
                            stats[e].min_delta = std::min(stats[e].min_delta, sub->delta);
                        }
                    }
                }
            }
            for (size_t e = 0; e < cfg.eps_ladder.size(); ++e) {
                per_eps.push_back({{"eps", cfg.eps_ladder[e]},
                                   {"heavy_arcs_searched", stats[e].searched},
                                   {"subarc_found", stats[e].found},
                                   {"min_delta", num(stats[e].min_delta)}});
            }
            per_alpha.push_back({{"alpha_angle", alpha},
                                 {"atoms", mu.atoms.size()},
                                 {"total_mass", num(mu.total_mass())},
                                 {"herglotz_constant", num(mu.herglotz_constant)},
                                 {"heavy_arcs", heavy_count},
                                 {"per_eps", per_eps}});
        }
        ordered_json s;
        s["per_alpha"] = per_alpha;
        return s;
    });

    // Condition (5a)-(5c): zero measure, Carleson constant, light sub-squares.
    guarded(sections["condition_5a_blaschke"], [&]() {
        ordered_json s;
        s["is_finite_blaschke_product"] = true;
        s["degree"] = F.degree();
        return s;
    });
    const DiskMeasure sigma = zero_measure(F);
    guarded(sections["condition_5b_carleson"], [&]() {
        ordered_json s;
        s["total_mass"] = num(sigma.total_mass());
        s["carleson_constant"] = num(carleson_constant(sigma, cfg.max_level, cfg.base_level));
        s["max_level"] = cfg.max_level;
        return s;
    });
    guarded(sections["condition_5c_light_subsquare"], [&]() {
        ordered_json per_eps = ordered_json::array();
        struct EpsStat {
            int searched = 0;
            int found = 0;
            double min_delta = 1.0;
        };
        std::vector<EpsStat> stats(cfg.eps_ladder.size());
        int heavy_count = 0;
        for (const DyadicSquare& q : square_sweep(cfg.base_level, cfg.max_level)) {
            if (!is_heavy_square(sigma, q).heavy) continue;
            ++heavy_count;
            for (size_t e = 0; e < cfg.eps_ladder.size(); ++e) {
                ++stats[e].searched;
                const auto sub = light_subsquare_search(sigma, q, cfg.eps_ladder[e],
                                                        cfg.light_search_max_depth);
                if (sub) {
                    ++stats[e].found;
                    stats[e].min_delta = std::min(stats[e].min_delta, sub->delta);
                }
            }
        }
        for (size_t e = 0; e < cfg.eps_ladder.size(); ++e) {
            per_eps.push_back({{"eps", cfg.eps_ladder[e]},
                               {"heavy_squares_searched", stats[e].searched},
                               {"subsquare_found", stats[e].found},
                               {"min_delta", num(stats[e].min_delta)}});
        }
        ordered_json s;
        s["heavy_squares"] = heavy_count;
        s["per_eps"] = per_eps;
        return s;
    });

    // Condition (6) measurable sub-parts: quasi-separation, D+, GCE residual.
    guarded(sections["condition_6_critical_set"], [&]() {
        const CriticalSet crit = critical_points(F);
        DiscreteSet cset;
        cset.points = crit.points;

        ordered_json s;
        s["critical_points"] = crit.points.size();
        const QuasiSeparationResult qs = quasi_separation_count(cset);
        s["quasi_separation"] = {{"bound", qs.bound},
                                 {"radius1_count", qs.radius1_count},
                                 {"separation_constant", num(separation_constant(cset))}};

        if (!crit.points.empty()) {
            AGridSpec a_spec;
            a_spec.base_level = cfg.base_level;
            a_spec.max_level = cfg.density_a_max_level;
            const DensityEstimate est =
                uniform_upper_density(cset, a_spec, cfg.density_r_ladder);
            s["uniform_upper_density"] = {{"d_plus", num(est.d_plus)},
                                          {"r_top", est.r_ladder.back()},
                                          {"a_grid_points", est.a_grid.size()}};
            ordered_json density_grid = ordered_json::array();
            for (size_t i = 0; i < est.a_grid.size(); ++i) {
                for (size_t j = 0; j < est.r_ladder.size(); ++j) {
                    char key[96];
                    std::snprintf(key, sizeof(key), "a=%.9g%+.9gi;r=%.9g",
                                  est.a_grid[i].value().real(), est.a_grid[i].value().imag(),
                                  est.r_ladder[j]);
                    density_grid.push_back(ordered_json::array({key, num(est.values[i][j])}));
                }
            }
            grids["critical_density_matrix"] = density_grid;
        } else {
            s["uniform_upper_density"] = {{"d_plus", 0.0}, {"note", "empty critical set"}};
        }

        // GCE residual at seeded random off-critical points; halving h checks
        // the second-order decay.
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        ordered_json samples = ordered_json::array();
        int accepted = 0;
        for (int tries = 0; tries < 100 * cfg.gce_samples && accepted < cfg.gce_samples;
             ++tries) {
            const double r = 0.8 * std::sqrt(unif(rng));
            const double phi = kTwoPi * unif(rng);
            const Complex z = std::polar(r, phi);
            bool ok = true;
            for (const DiskPoint& c : crit.points) {
                if (detail::dist_h(z, c.value()) <= 0.15) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ++accepted;
            const double res_h = gauss_curvature_residual(F, z, cfg.gce_h, crit);
            const double res_h2 = gauss_curvature_residual(F, z, cfg.gce_h / 2.0, crit);
            samples.push_back({{"z", complex_pair(z)},
                               {"residual_h", num(res_h)},
                               {"residual_h_over_2", num(res_h2)},
                               {"ratio", num(res_h2 != 0.0 ? res_h / res_h2 : 0.0)}});
        }
        s["gauss_curvature"] = {{"h", cfg.gce_h}, {"samples", samples}};
        return s;
    });

    // Supplementary in-scope diagnostics: Holder exponent along descent
    // endpoints, the hyperbolic area function, and the Jensen balance.
    guarded(sections["supplementary"], [&]() {
        ordered_json s;
        ordered_json holder = ordered_json::array();
        for (int k = 0; k < 4; ++k) {
            const DiskPoint z(std::polar(0.5, kTwoPi * k / 4.0));
            const DescentChain chain = descent_chain(F, z, cfg.eps_ladder.front(),
                                                     cfg.chain_length, cfg.descent_n_max,
                                                     cfg.base_level);
            const HolderEstimate est = holder_exponent(F, chain.endpoint, cfg.holder_r_ladder);
            holder.push_back({{"endpoint_angle", chain.endpoint.angle}, {"s", num(est.s)}});
        }
        s["holder"] = holder;

        ordered_json area_fn = ordered_json::array();
        for (double r : {0.5, 0.9, 0.99}) {
            area_fn.push_back(ordered_json::array(
                {r, num(hyperbolic_area_function(F, 0.0, r, 2.0, cfg.quadrature))}));
        }
        s["hyperbolic_area_function_theta0"] = area_fn;

        try {
            const JensenBalance jb = jensen_balance(F, cfg.jensen_r, cfg.jensen_nodes);
            s["jensen"] = {{"r", cfg.jensen_r},
                           {"circle_mean", num(jb.circle_mean)},
                           {"jensen_gap", num(jb.jensen_gap)},
                           {"bound_lhs", num(jb.bound_lhs)},
                           {"bound_rhs", num(jb.bound_rhs)},
                           {"bound_gap", num(jb.bound_gap)}};
        } catch (const ValidationError& e) {
            s["jensen"] = {{"skipped", std::string("precondition: ") + e.what()}};
        }
        return s;
    });

    doc["sections"] = sections;
    doc["grids"] = grids;

    Report report;
    report.json = doc.dump(2);
    report.json.push_back('\n');
    report.numerical_failure = failure;
    return report;
}

void emit_report(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open report path for writing: " + path);
    out << report.json;
    if (!out) throw ValidationError("write failed: " + path);
}

void emit_grids(const Report& report, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create grid directory " + dir + ": " + ec.message());
    const ordered_json doc = ordered_json::parse(report.json);
    if (!doc.contains("grids")) return;
    for (const auto& [name, rows] : doc["grids"].items()) {
        const std::string path = dir + "/" + name + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot open grid path for writing: " + path);
        out << "key,value\n";
        for (const auto& row : rows) {
            char buf[48];
            if (row.at(1).is_number()) {
                std::snprintf(buf, sizeof(buf), "%.17g", row.at(1).get<double>());
                out << row.at(0).get<std::string>() << ',' << buf << '\n';
            } else {
                out << row.at(0).get<std::string>() << ','
                    << row.at(1).get<std::string>() << '\n';
            }
        }
        if (!out) throw ValidationError("write failed: " + path);
    }
}

}  // namespace bcdiag
