#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcdiag/diagnostics.hpp"
#include "bcdiag/density.hpp"

namespace bcdiag {

/// Full configuration of the analysis battery. Byte-identical reports are
/// guaranteed for identical configuration and seed.
struct AnalysisConfig {
    std::vector<Complex> zeros;
    double prefactor_angle = 0.0;

    std::vector<double> alphas;  // boundary angles; empty selects the 8-point grid

    int base_level = 3;
    int max_level = 12;
    double r_max = 0.995;
    int boundary_samples = 512;
    double ball_radius = 1.0;

    QuadratureSpec quadrature;
    TargetGridSpec target_grid;
    BallGridSpec ball_grid;
    double containment_resolution = 1e-2;

    std::vector<double> eps_ladder = {0.5, 0.25, 0.1};
    int descent_n_max = 8;
    int chain_length = 6;
    int descent_sweep_max_level = 6;  // deepest parent level swept in condition (2)

    double quasigeodesic_t_max = 8.0;
    int quasigeodesic_samples = 40;
    double quasigeodesic_c_cap = 20.0;

    std::vector<double> distortion_eps = {0.5, 1.0, 2.0};

    int density_a_max_level = 5;
    std::vector<double> density_r_ladder = {0.9, 0.99, 0.999, 0.9999};

    std::vector<double> holder_r_ladder;  // empty selects 1 - 2^-k, k = 4..24
    double light_subarc_delta_min = 1.0 / 1024.0;
    int light_search_max_depth = 10;

    double gce_h = 1e-3;
    int gce_samples = 24;

    double jensen_r = 0.9;
    int jensen_nodes = 1 << 14;

    std::uint64_t seed = 1;
};

/// Validates ranges (radii within the disk margin, levels within [3, 24], ...).
/// Throws ValidationError.
void validate(const AnalysisConfig& config);

struct Report {
    std::string json;        // the full document, schema-versioned, stable key order
    bool numerical_failure;  // some section was skipped with a numerical error
};

/// CSV zeros file: "re,im" per line, '#' comments. Throws ValidationError with
/// the offending line number.
std::vector<DiskPoint> parse_zeros_file(const std::string& path);

/// JSON config file; missing keys keep their defaults.
AnalysisConfig parse_config_file(const std::string& path);

/// Runs every in-scope diagnostic over the configured grid. Individual section
/// failures are recorded in place ("skipped": reason) without aborting the rest.
Report run_battery(const AnalysisConfig& config);

/// Writes the report document to path (UTF-8, trailing newline).
void emit_report(const Report& report, const std::string& path);

/// Writes every grid recorded in the report as a plot-ready CSV
/// ("key,value" header) under dir.
void emit_grids(const Report& report, const std::string& dir);

}  // namespace bcdiag
