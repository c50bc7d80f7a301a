#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcdiag/blaschke.hpp"
#include "bcdiag/carleson.hpp"
#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

/// Hyperbolically quasi-uniform evaluation grid: centers z_Q of all dyadic
/// squares with base_level <= level <= max_level and |z_Q| <= r_max, plus the origin.
std::vector<DiskPoint> center_grid(int base_level, int max_level, double r_max);

/// n points of the Euclidean boundary circle of B_h(z, R), ordered along the
/// circle (pushed forward from the conjugated radial picture).
std::vector<Complex> ball_boundary_points(const DiskPoint& z, double R, int n);

/// Sampled hyperbolic diameter of F(B_h(z, R)). Both maxima of the diameter are
/// attained on the boundary circle (maximum principle applied to m_q of F), so
/// only boundary pairs are scanned.
double image_diameter(const BlaschkeProduct& F, const DiskPoint& z, double R,
                      int n_boundary);

/// Same statistic for an arbitrary self-map sample; used for invariance checks.
double image_diameter_sampled(const std::vector<Complex>& image_points);

struct QuadratureSpec {
    int radial = 64;        // radial Gauss panels (8-point each)
    int angular = 256;      // angular trapezoid nodes
    int max_refine = 5;     // doublings allowed before giving up
    double rel_tol = 1e-6;  // refinement stop: successive values agree to this
};

/// Integral of 4 |F'|^2 / (1-|F|^2)^2 over B_h(z, R) (hyperbolic area counted
/// with multiplicity), via the conjugated polar grid; Mobius-invariant
/// integrand, so the kernel is identical for every center.
/// Throws NumericalError if refinement does not converge.
double image_area_with_multiplicity(const BlaschkeProduct& F, const DiskPoint& z,
                                    double R, const QuadratureSpec& spec = {});

struct TargetGridSpec {
    int radial = 48;
    int angular = 96;
    int boundary_nodes = 2048;  // image-curve polygon resolution
};

struct AreaEstimate {
    double value = 0.0;
    bool degenerate = false;  // an empty grid was supplied
};

/// Hyperbolic area of the image set F(B_h(z, R)): target cells of a polar grid
/// are classified by winding number of the sampled image curve and weighted by
/// exact cell hyperbolic area.
AreaEstimate image_area_sampled(const BlaschkeProduct& F, const DiskPoint& z, double R,
                                const TargetGridSpec& grid = {});

struct BallGridSpec {
    int radial = 24;
    int angular = 64;
};

/// Maximum of D_h F over a polar grid of the closed ball (outer ring included),
/// refined once around the argmax.
double max_hyperbolic_derivative(const BlaschkeProduct& F, const DiskPoint& z, double R,
                                 const BallGridSpec& grid = {});

/// Number of preimages of q in B_h(ball), counted with multiplicity: winding
/// number of F - q along the Euclidean boundary circle, by adaptively refined
/// argument increments. Throws NumericalError on persistent boundary proximity.
int preimage_count(const BlaschkeProduct& F, const HyperbolicBall& ball, Complex q);

/// Largest c on a bisection ladder with F(B_h(z,R)) containing B_h(F(z), c),
/// tested on sampled target circles against the image-curve winding number.
double ball_containment_radius(const BlaschkeProduct& F, const DiskPoint& z, double R,
                               double resolution, int n_targets = 64,
                               int boundary_nodes = 2048);

struct DescentWitness {
    DyadicSquare parent;
    DyadicSquare child;
    int depth;     // N: l(child) = 2^-N l(parent)
    double ratio;  // (1-|F(z_child)|) / (1-|F(z_parent)|)
};

/// Breadth-first search (minimal depth, then smallest index) for a descendant
/// with 1-|F(z_child)| <= eps (1-|F(z_parent)|).
std::optional<DescentWitness> descent_search(const BlaschkeProduct& F,
                                             const DyadicSquare& q, double eps,
                                             int n_max);

struct DescentChain {
    BoundaryPoint endpoint;            // midpoint direction of the last square
    std::vector<DyadicSquare> squares; // starting square first
    bool complete;                     // false if some step found no witness
};

/// Iterated descent from the smallest admissible square over z; the nested
/// square midpoints converge to the boundary point reported as endpoint.
/// For central z (no level-3 square reaches it radially) the walk starts at the
/// base-level square in the direction of z.
DescentChain descent_chain(const BlaschkeProduct& F, const DiskPoint& z, double eps,
                           int chain_length, int n_max = 8, int base_level = kBaseLevel);

struct QuasigeodesicFit {
    DiskPoint base;
    BoundaryPoint endpoint;
    double s = 0.0;  // in (0, 1]
    double c = 0.0;  // additive defect
    int sample_count = 0;
};

/// Fits d_h(F(w1), F(w2)) >= s d_h(w1, w2) - C over sampled pairs of the
/// geodesic ray [z, xi): maximal s on the grid {0.01, ..., 1.00} whose minimal
/// admissible C stays below c_cap.
QuasigeodesicFit quasigeodesic_fit(const BlaschkeProduct& F, const DiskPoint& z,
                                   const BoundaryPoint& xi, double t_max, int n_samples,
                                   double c_cap = 20.0);

struct HolderEstimate {
    double s = 0.0;  // least-squares slope of log(1-|F(r xi)|) against log(1-r)
    struct Row {
        double r;
        double one_minus_r;
        double one_minus_mod;
    };
    std::vector<Row> table;
};

HolderEstimate holder_exponent(const BlaschkeProduct& F, const BoundaryPoint& xi,
                               const std::vector<double>& r_ladder);

/// Integral of D_h^2 F / (1-|z|^2)^2 over the truncated Stolz-type region
/// { |z| <= r, |z - e^{i theta}| <= aperture (1-|z|) }.
/// Throws NumericalError if refinement does not converge.
double hyperbolic_area_function(const BlaschkeProduct& F, double theta, double r,
                                double aperture, const QuadratureSpec& spec = {});

/// Five-point finite-difference residual of Delta u = e^{2u} for
/// u = log(2|F'|/(1-|F|^2)), away from the critical set (O(h^2) when valid).
/// Throws PreconditionError if the stencil is too close to a critical point or
/// leaves the disk.
double gauss_curvature_residual(const BlaschkeProduct& F, Complex z, double h,
                                const CriticalSet& crit);
double gauss_curvature_residual(const BlaschkeProduct& F, Complex z, double h);

/// For each eps: empirical delta = min of D_h F over grid points z with
/// |z| <= r_max and d_h(z, crit F) > eps. Infinity when nothing qualifies.
std::vector<std::pair<double, double>> distortion_profile(
    const BlaschkeProduct& F, const std::vector<double>& eps_ladder,
    const BallGridSpec& grid, double r_max);

struct JensenBalance {
    double circle_mean;  // mean of log|F'| over the circle of radius r
    double jensen_gap;   // circle_mean - log|F'(0)| - sum log(r/|c|), expected ~0
    double bound_lhs;    // sum over crit in B(0,r) of log(1/|c|)
    double bound_rhs;    // area integral term + log(1/|F'(0)|)
    double bound_gap;    // bound_rhs - bound_lhs (the empirical O(1))
};

/// Exact Jensen identity for log|F'| plus both sides of the critical-set
/// counting bound. Requires F'(0) != 0 and r off the critical moduli by 1e-6.
JensenBalance jensen_balance(const BlaschkeProduct& F, double r, int n_nodes);

/// Ball statistics behind the equivalent forms of bounded compression, swept
/// over a center grid. Every entry is reproducible from the labels.
struct ConditionReport {
    std::vector<std::string> labels;  // one per grid center
    std::vector<double> diameter;
    std::vector<double> area_sampled;
    std::vector<double> area_mult;
    std::vector<double> max_derivative;
    std::vector<double> containment;
    double c1_min_diameter = 0.0;
    double c2_min_area = 0.0;
    double c3_min_area_mult = 0.0;
    double c4_min_max_derivative = 0.0;
    double c5_min_containment = 0.0;
    std::vector<std::pair<double, double>> distortion;  // (eps, delta)
};

struct BallSweepSpec {
    double radius = 1.0;
    int boundary_samples = 512;
    QuadratureSpec quadrature;
    TargetGridSpec target_grid;
    BallGridSpec ball_grid;
    double containment_resolution = 1e-2;
    std::vector<double> distortion_eps = {0.5, 1.0, 2.0};
    double r_max = 0.995;
};

ConditionReport ball_condition_report(const BlaschkeProduct& F,
                                      const std::vector<DiskPoint>& centers,
                                      const BallSweepSpec& spec);

}  // namespace bcdiag
