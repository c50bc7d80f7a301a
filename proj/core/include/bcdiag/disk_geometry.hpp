#pragma once

#include <cmath>
#include <complex>

#include "bcdiag/errors.hpp"

namespace bcdiag {

using Complex = std::complex<double>;

/// Admission margin for disk points. Points with 1-|z| below this have lost all
/// significant digits in 1-|z| and are rejected.
inline constexpr double kDiskMargin = 1e-12;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point of the open unit disk, |z| < 1 - kDiskMargin.
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(Complex value) : value_(value) {
        if (!(std::abs(value) < 1.0 - kDiskMargin)) {
            throw ValidationError("DiskPoint outside admissible disk: |z| = " +
                                  std::to_string(std::abs(value)));
        }
    }
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    const Complex& value() const { return value_; }
    double abs() const { return std::abs(value_); }

    friend bool operator==(const DiskPoint& a, const DiskPoint& b) {
        return a.value_ == b.value_;
    }

private:
    Complex value_{0.0, 0.0};
};

/// A point of the unit circle, stored as an angle normalized to [0, 2*pi).
struct BoundaryPoint {
    double angle = 0.0;

    explicit BoundaryPoint(double a = 0.0) {
        angle = std::fmod(a, kTwoPi);
        if (angle < 0.0) angle += kTwoPi;
    }
    Complex value() const { return std::polar(1.0, angle); }
};

/// Disk automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z).
struct Mobius {
    DiskPoint a;
    double theta = 0.0;

    /// The inverse is again of the same form with pole -a e^{i theta} and angle -theta.
    Mobius inverse() const {
        return Mobius{DiskPoint(-a.value() * std::polar(1.0, theta)), -theta};
    }
};

/// Hyperbolic metric convention: 2|dz|/(1-|z|^2), so d_h(0, r) = log((1+r)/(1-r)).
struct HyperbolicBall {
    DiskPoint center;
    double radius = 1.0;  // hyperbolic units, > 0
};

struct EuclideanDisk {
    Complex center;
    double radius;
};

namespace detail {

/// Pseudohyperbolic distance for raw complex arguments (no admission check).
inline double rho(Complex z, Complex w) {
    const double num = std::abs(z - w);
    if (num == 0.0) return 0.0;
    return num / std::abs(1.0 - std::conj(z) * w);
}

inline double dist_h(Complex z, Complex w) {
    const double r = rho(z, w);
    // log((1+r)/(1-r)) evaluated stably for small r
    return std::log1p(2.0 * r / (1.0 - r));
}

inline Complex mobius_apply_raw(const Mobius& m, Complex z) {
    const Complex a = m.a.value();
    return std::polar(1.0, m.theta) * (z - a) / (1.0 - std::conj(a) * z);
}

}  // namespace detail

inline double pseudohyperbolic_distance(const DiskPoint& z, const DiskPoint& w) {
    return detail::rho(z.value(), w.value());
}

inline double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w) {
    return detail::dist_h(z.value(), w.value());
}

/// Applies a disk automorphism. Throws if the image has lost the admission
/// margin (precision loss next to the unit circle).
inline DiskPoint mobius_apply(const Mobius& m, const DiskPoint& z) {
    return DiskPoint(detail::mobius_apply_raw(m, z.value()));
}

/// Boundary action of the automorphism; the image is renormalized to the circle.
inline BoundaryPoint mobius_apply(const Mobius& m, const BoundaryPoint& xi) {
    const Complex image = detail::mobius_apply_raw(m, xi.value());
    return BoundaryPoint(std::arg(image));
}

/// Euclidean realization of a hyperbolic ball. With t = tanh(R/2),
/// center c: the disk has center c (1-t^2) / (1 - t^2 |c|^2) and radius
/// t (1-|c|^2) / (1 - t^2 |c|^2). For c = 0 this is radius tanh(R/2).
EuclideanDisk ball_to_euclidean(const HyperbolicBall& ball);

/// Point on the geodesic ray [z, xi) at hyperbolic distance t from z.
/// Computed by conjugating to the radial case with the Mobius map z -> 0.
DiskPoint geodesic_point(const DiskPoint& z, const BoundaryPoint& xi, double t);

}  // namespace bcdiag
