#include "bcdiag/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bcdiag {

namespace {

// Angular position of z in normalized circle measure, in [0, 1).
double normalized_angle(Complex z) {
    double t = std::arg(z) / kTwoPi;
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    return t;
}

}  // namespace

DyadicSquare make_square(int level, std::int64_t index, int base_level) {
    if (base_level < 2) {
        throw ValidationError("make_square: base_level must be >= 2 (|I| < 1/2)");
    }
    if (level < base_level || level > 62) {
        throw ValidationError("make_square: level out of range");
    }
    if (index < 0 || index >= (std::int64_t{1} << level)) {
        throw ValidationError("make_square: index out of range");
    }
    return DyadicSquare{level, index};
}

SquareGeometry square_geometry(const DyadicSquare& q) {
    const double side = std::ldexp(1.0, -q.level);
    const double start = static_cast<double>(q.index) * side;
    const BoundaryPoint mid(kTwoPi * (static_cast<double>(q.index) + 0.5) * side);
    return SquareGeometry{start, start + side, side, mid,
                          DiskPoint((1.0 - side / 2.0) * mid.value())};
}

bool square_contains(const DyadicSquare& q, Complex z) {
    const double side = std::ldexp(1.0, -q.level);
    const double r = std::abs(z);
    if (!(r > 1.0 - side && r < 1.0)) return false;
    const double pos = normalized_angle(z);
    const double start = static_cast<double>(q.index) * side;
    return pos >= start && pos < start + side;
}

std::vector<DyadicSquare> descendants(const DyadicSquare& q, int depth) {
    if (depth < 0 || q.level + depth > 62) {
        throw ValidationError("descendants: depth out of range");
    }
    const std::int64_t count = std::int64_t{1} << depth;
    std::vector<DyadicSquare> out;
    out.reserve(static_cast<size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        out.push_back(DyadicSquare{q.level + depth, q.index * count + k});
    }
    return out;
}

double DiskMeasure::total_mass() const {
    double sum = 0.0;
    for (const Atom& a : atoms) sum += a.mass;
    return sum;
}

DiskMeasure zero_measure(const BlaschkeProduct& F) {
    DiskMeasure sigma;
    sigma.atoms.reserve(F.zeros().size());
    for (const DiskPoint& a : F.zeros()) {
        sigma.atoms.push_back({a, 1.0 - std::norm(a.value())});
    }
    return sigma;
}

double measure_of_square(const DiskMeasure& sigma, const DyadicSquare& q) {
    double sum = 0.0;
    for (const auto& atom : sigma.atoms) {
        if (square_contains(q, atom.point.value())) sum += atom.mass;
    }
    return sum;
}

double carleson_constant(const DiskMeasure& sigma, int max_level, int base_level) {
    if (max_level < base_level) {
        throw ValidationError("carleson_constant: max_level below base_level");
    }
    std::map<std::pair<int, std::int64_t>, double> cell_mass;
    for (const auto& atom : sigma.atoms) {
        const double r = atom.point.abs();
        const double pos = normalized_angle(atom.point.value());
        for (int level = base_level; level <= max_level; ++level) {
            const double side = std::ldexp(1.0, -level);
            if (!(r > 1.0 - side)) break;  // deeper squares exclude the atom too
            const auto index =
                static_cast<std::int64_t>(std::floor(pos * std::ldexp(1.0, level)));
            cell_mass[{level, index}] += atom.mass;
        }
    }
    double best = 0.0;
    for (const auto& [key, mass] : cell_mass) {
        best = std::max(best, mass * std::ldexp(1.0, key.first));
    }
    return best;
}

double balayage(const DiskMeasure& sigma, Complex z) {
    const double zfac = 1.0 - std::norm(z);
    double sum = 0.0;
    for (const auto& atom : sigma.atoms) {
        sum += atom.mass * zfac / std::norm(1.0 - std::conj(z) * atom.point.value());
    }
    return sum;
}

HeavySquareResult is_heavy_square(const DiskMeasure& sigma, const DyadicSquare& q) {
    const SquareGeometry geo = square_geometry(q);
    const double mean = measure_of_square(sigma, q) / geo.side;
    const double bal = balayage(sigma, geo.center.value());
    const double margin = mean - bal / 100.0;
    const bool degenerate = mean == 0.0 && bal == 0.0;
    return HeavySquareResult{!degenerate && margin >= 0.0, margin, mean, bal};
}

std::optional<LightSubsquare> light_subsquare_search(const DiskMeasure& sigma,
                                                     const DyadicSquare& q, double eps,
                                                     int max_depth) {
    if (!(eps > 0.0)) throw ValidationError("light_subsquare_search: eps must be positive");
    const SquareGeometry geo = square_geometry(q);
    const double parent_mean = measure_of_square(sigma, q) / geo.side;
    for (int depth = 0; depth <= max_depth; ++depth) {
        for (const DyadicSquare& child : descendants(q, depth)) {
            const double child_mean =
                measure_of_square(sigma, child) * std::ldexp(1.0, child.level);
            if (child_mean <= eps * parent_mean) {
                const double rel = parent_mean > 0.0 ? child_mean / parent_mean : 0.0;
                return LightSubsquare{child, std::ldexp(1.0, -depth), child_mean, rel};
            }
        }
    }
    return std::nullopt;
}

}  // namespace bcdiag
