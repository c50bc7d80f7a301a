#pragma once

#include <vector>

#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

/// Finite discrete subset of the disk; duplicates only as multiplicity.
struct DiscreteSet {
    std::vector<DiskPoint> points;
};

/// Minimum pairwise hyperbolic distance; +infinity for fewer than two points.
double separation_constant(const DiscreteSet& c);

struct QuasiSeparationResult {
    int bound;          // max point-centered count at radius 2*radius; any
                        // radius-`radius` ball holds at most this many points
    int radius1_count;  // max point-centered count at the given radius
};

QuasiSeparationResult quasi_separation_count(const DiscreteSet& c, double radius = 1.0);

/// D(C, r) = sum over points with 1/2 < |c| < r of (1-|c|), over log(1/(1-r)).
double partial_density(const DiscreteSet& c, double r);

/// Mobius orbit sample for the sup over a: dyadic-square centers for levels
/// [base_level, max_level], optionally with the origin.
struct AGridSpec {
    int base_level = 3;
    int max_level = 5;
    bool include_origin = false;
};

struct DensityEstimate {
    std::vector<double> r_ladder;
    std::vector<DiskPoint> a_grid;
    /// values[i][j] = D(m_{a_i -> 0}(C), r_j)
    std::vector<std::vector<double>> values;
    /// max over a of the value at the top rung of the ladder; the limsup itself
    /// is not numerically accessible, so no extrapolation is attempted
    double d_plus = 0.0;
};

DensityEstimate uniform_upper_density(const DiscreteSet& c, const AGridSpec& a_spec,
                                      const std::vector<double>& r_ladder);

/// Same estimator over an explicit Mobius orbit sample; conformal invariance
/// holds exactly when the grid is transported along with the set.
DensityEstimate uniform_upper_density(const DiscreteSet& c,
                                      const std::vector<DiskPoint>& a_grid,
                                      const std::vector<double>& r_ladder);

}  // namespace bcdiag
