#include "bcdiag/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcdiag/carleson.hpp"

namespace bcdiag {

double separation_constant(const DiscreteSet& c) {
    const size_t n = c.points.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            best = std::min(best, hyperbolic_distance(c.points[i], c.points[j]));
        }
    }
    return best;
}

QuasiSeparationResult quasi_separation_count(const DiscreteSet& c, double radius) {
    if (!(radius > 0.0)) throw ValidationError("quasi_separation_count: radius must be positive");
    int bound = 0;
    int small_count = 0;
    // Any ball of the given radius holding k points yields a point-centered
    // ball of twice the radius holding k, so the doubled count is an upper bound.
    for (const DiskPoint& p : c.points) {
        int n2 = 0;
        int n1 = 0;
        for (const DiskPoint& q : c.points) {
            const double d = hyperbolic_distance(p, q);
            if (d < 2.0 * radius) ++n2;
            if (d < radius) ++n1;
        }
        bound = std::max(bound, n2);
        small_count = std::max(small_count, n1);
    }
    return QuasiSeparationResult{bound, small_count};
}

double partial_density(const DiscreteSet& c, double r) {
    if (!(r > 0.5 && r < 1.0)) {
        throw ValidationError("partial_density: r must lie in (1/2, 1)");
    }
    double numerator = 0.0;
    for (const DiskPoint& p : c.points) {
        const double m = p.abs();
        if (m > 0.5 && m < r) numerator += 1.0 - m;
    }
    return numerator / std::log(1.0 / (1.0 - r));
}

DensityEstimate uniform_upper_density(const DiscreteSet& c,
                                      const std::vector<DiskPoint>& a_grid,
                                      const std::vector<double>& r_ladder) {
    if (r_ladder.empty()) throw ValidationError("uniform_upper_density: empty r ladder");
    for (size_t i = 0; i < r_ladder.size(); ++i) {
        if (!(r_ladder[i] > 0.5 && r_ladder[i] < 1.0 - kDiskMargin)) {
            throw ValidationError("uniform_upper_density: ladder values must lie in (1/2, 1) within margin");
        }
        if (i > 0 && !(r_ladder[i] > r_ladder[i - 1])) {
            throw ValidationError("uniform_upper_density: ladder must increase");
        }
    }

    DensityEstimate est;
    est.r_ladder = r_ladder;
    est.a_grid = a_grid;
    est.values.resize(est.a_grid.size());
    for (size_t i = 0; i < est.a_grid.size(); ++i) {
        const Mobius shift{est.a_grid[i], 0.0};
        DiscreteSet shifted;
        shifted.points.reserve(c.points.size());
        for (const DiskPoint& p : c.points) {
            shifted.points.push_back(mobius_apply(shift, p));
        }
        est.values[i].reserve(r_ladder.size());
        for (double r : r_ladder) {
            est.values[i].push_back(partial_density(shifted, r));
        }
        est.d_plus = std::max(est.d_plus, est.values[i].back());
    }
    return est;
}

DensityEstimate uniform_upper_density(const DiscreteSet& c, const AGridSpec& a_spec,
                                      const std::vector<double>& r_ladder) {
    std::vector<DiskPoint> a_grid;
    if (a_spec.include_origin) a_grid.emplace_back(Complex(0.0, 0.0));
    for (int level = a_spec.base_level; level <= a_spec.max_level; ++level) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            a_grid.push_back(square_geometry(make_square(level, k, a_spec.base_level)).center);
        }
    }
    return uniform_upper_density(c, a_grid, r_ladder);
}

}  // namespace bcdiag
