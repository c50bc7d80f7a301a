#pragma once

#include <vector>

#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

/// Finite Blaschke product e^{i theta} prod_n (z - a_n) / (1 - conj(a_n) z).
/// Zeros are stored with multiplicity; a single global prefactor angle.
/// Immutable after construction.
class BlaschkeProduct {
public:
    explicit BlaschkeProduct(std::vector<DiskPoint> zeros, double prefactor_angle = 0.0);

    int degree() const { return static_cast<int>(zeros_.size()); }
    const std::vector<DiskPoint>& zeros() const { return zeros_; }
    double prefactor_angle() const { return prefactor_angle_; }

    /// F(z). Vanishes exactly at the zeros; |F| < 1 on the disk.
    Complex evaluate(Complex z) const;

    /// log |F(z)| <= 0, summed per factor through log1p of the exact identity
    /// 1 - |m_n(z)|^2 = (1-|z|^2)(1-|a_n|^2)/|1-conj(a_n)z|^2; no cancellation
    /// when |F(z)| is close to 1.
    double log_modulus(Complex z) const;

    /// 1 - |F(z)|^2 without cancellation (via expm1 of log_modulus).
    double one_minus_modulus_squared(Complex z) const;

    /// 1 - |F(z)| without cancellation.
    double one_minus_modulus(Complex z) const;

    /// F'(z) via logarithmic differentiation F' = F * sum (1-|a|^2)/((z-a)(1-conj(a)z)),
    /// falling back to product-rule differentiation next to a zero where the sum
    /// has a (removable) pole.
    Complex derivative(Complex z) const;

    /// D_h F(z) = (1-|z|^2) |F'(z)| / (1-|F(z)|^2), in [0,1] by the Schwarz lemma.
    double hyperbolic_derivative(Complex z) const;

    /// sum_n (1-|z|^2)(1-|a_n|^2)/|1-conj(a_n) z|^2; comparable to 1-|F(z)|^2
    /// away from the zeros and equal to it for degree 1.
    double zero_sum_surrogate(Complex z) const;

    /// The displayed sum sum_n (1-|z|^2)(1-|a_n|^2) / (|1-conj(a_n)z|^2 (a_n-z)/(1-a_n conj(z))).
    /// Its modulus equals (1-|z|^2)|F'(z)|/|F(z)|.
    /// Throws SingularInputError within pseudohyperbolic distance 1e-9 of a zero.
    Complex log_derivative_sum(Complex z) const;

    /// d/dtheta arg F(e^{i theta}) = sum_n (1-|a_n|^2)/|e^{i theta}-a_n|^2 > 0.
    double boundary_phase_speed(double theta) const;

private:
    Complex derivative_product_rule(Complex z) const;

    std::vector<DiskPoint> zeros_;
    double prefactor_angle_;
};

/// Critical points of F inside the disk, with multiplicity (d-1 points for degree d).
struct CriticalSet {
    std::vector<DiskPoint> points;
};

/// Roots of F' in the disk: interior roots of the polynomial numerator
/// sum_n (1-|a_n|^2) prod_{m != n} (z-a_m)(1-conj(a_m) z), refined by Newton
/// iteration and merged into multiplicity clusters at pseudohyperbolic radius 1e-7.
/// Throws NumericalError if residuals |F'(c)| exceed 1e-10 * sum (1-|a_n|^2).
CriticalSet critical_points(const BlaschkeProduct& F);

}  // namespace bcdiag
