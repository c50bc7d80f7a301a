#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

EuclideanDisk ball_to_euclidean(const HyperbolicBall& ball) {
    if (!(ball.radius > 0.0)) {
        throw ValidationError("HyperbolicBall radius must be positive");
    }
    const double t = std::tanh(ball.radius / 2.0);
    const Complex c = ball.center.value();
    const double c2 = std::norm(c);
    const double denom = 1.0 - t * t * c2;
    return EuclideanDisk{c * (1.0 - t * t) / denom, t * (1.0 - c2) / denom};
}

DiskPoint geodesic_point(const DiskPoint& z, const BoundaryPoint& xi, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("geodesic_point: t must be finite and nonnegative");
    }
    if (t == 0.0) return z;

    const Mobius to_origin{z, 0.0};
    // Endpoint of the conjugated ray; renormalize to kill rounding in the modulus.
    Complex e = detail::mobius_apply_raw(to_origin, xi.value());
    e /= std::abs(e);
    const double r = std::tanh(t / 2.0);
    return mobius_apply(to_origin.inverse(), DiskPoint(r * e));
}

}  // namespace bcdiag
