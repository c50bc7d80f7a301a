#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bcdiag/blaschke.hpp"
#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

/// Default shallowest dyadic level; side length 1/8 in normalized circle measure.
inline constexpr int kBaseLevel = 3;

/// Dyadic Carleson square over the base arc [index/2^level, (index+1)/2^level),
/// arc lengths in normalized circle measure (total mass 1).
struct DyadicSquare {
    int level = kBaseLevel;
    std::int64_t index = 0;
};

/// Validating factory; level in [base_level, 62], index in [0, 2^level).
DyadicSquare make_square(int level, std::int64_t index, int base_level = kBaseLevel);

struct SquareGeometry {
    double arc_start;        // normalized position in [0,1)
    double arc_end;          // arc_start + side
    double side;             // l(Q) = 2^-level
    BoundaryPoint midpoint;  // xi_I
    DiskPoint center;        // z_Q = (1 - l/2) xi_I
};

SquareGeometry square_geometry(const DyadicSquare& q);

/// Membership in Q = { z : z/|z| in I, 1 - |I| < |z| < 1 }, base arc half-open.
bool square_contains(const DyadicSquare& q, Complex z);

/// Children at relative depth n below q; 2^n squares in index order.
std::vector<DyadicSquare> descendants(const DyadicSquare& q, int depth);

/// Finite atomic measure on the disk.
struct DiskMeasure {
    struct Atom {
        DiskPoint point;
        double mass;  // > 0
    };
    std::vector<Atom> atoms;

    double total_mass() const;
};

/// sigma = sum over zeros of (1-|a_n|^2) delta_{a_n}; multiplicities kept as
/// repeated atoms so the measure stays aligned with the zero list.
DiskMeasure zero_measure(const BlaschkeProduct& F);

double measure_of_square(const DiskMeasure& sigma, const DyadicSquare& q);

/// max of sigma(Q)/l(Q) over dyadic squares with base_level <= level <= max_level.
/// Only squares containing an atom are enumerated (ancestor walk per atom).
double carleson_constant(const DiskMeasure& sigma, int max_level, int base_level = kBaseLevel);

/// Balayage sum of the square kernel: sum of mass * (1-|z|^2)/|1 - conj(z) w|^2.
double balayage(const DiskMeasure& sigma, Complex z);

struct HeavySquareResult {
    bool heavy;
    double margin;       // sigma(Q)/l(Q) - (1/100) * balayage(sigma, z_Q)
    double mean;         // sigma(Q)/l(Q)
    double balayage_at_center;
};

/// Heavy-square test at the fixed constant 1/100. The degenerate case with both
/// sides zero reports not-heavy.
HeavySquareResult is_heavy_square(const DiskMeasure& sigma, const DyadicSquare& q);

struct LightSubsquare {
    DyadicSquare square;
    double delta;     // l(Q')/l(Q) = 2^-depth
    double mean;      // sigma(Q')/l(Q')
    double relative;  // mean / (sigma(Q)/l(Q)); 0 when the parent mean is 0
};

/// Shallowest descendant (largest delta, then smallest index) whose mean is at
/// most eps times the parent mean; depth 0 qualifies when eps >= 1.
std::optional<LightSubsquare> light_subsquare_search(const DiskMeasure& sigma,
                                                     const DyadicSquare& q, double eps,
                                                     int max_depth);

}  // namespace bcdiag
