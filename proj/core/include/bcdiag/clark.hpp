#pragma once

#include <optional>
#include <vector>

#include "bcdiag/blaschke.hpp"
#include "bcdiag/disk_geometry.hpp"

namespace bcdiag {

/// Atomic measure on the circle; for a degree-d Blaschke product the Clark
/// measure has exactly d atoms.
struct CircleMeasure {
    struct Atom {
        double angle;  // in [0, 2*pi)
        double mass;   // > 0
    };
    std::vector<Atom> atoms;
    double herglotz_constant = 0.0;  // C_alpha = Im (alpha + F(0))/(alpha - F(0))

    double total_mass() const;
};

/// Arc of the circle; length in normalized measure (total mass 1), in (0, 1/2).
/// The distinguished interior point z_I = (1 - |I|/2) e^{i center} mirrors the
/// Carleson-square center over the same arc.
struct Arc {
    double center_angle;
    double length;

    Arc(double center, double len) : center_angle(center), length(len) {
        if (!(len > 0.0 && len < 0.5)) {
            throw ValidationError("Arc length must lie in (0, 1/2) normalized measure");
        }
    }
    DiskPoint carleson_center() const {
        return DiskPoint((1.0 - length / 2.0) * std::polar(1.0, center_angle));
    }
    /// Membership in the half-open arc [center - pi*len, center + pi*len).
    bool contains(double angle) const;
};

/// Aleksandrov-Clark measure mu_alpha of F: atoms at the d boundary solutions of
/// F(xi) = alpha, located by bisection on the strictly increasing boundary phase,
/// each with mass 1 / boundary_phase_speed at the solution.
/// Throws NumericalError if phase bracketing fails.
CircleMeasure clark_measure(const BlaschkeProduct& F, const BoundaryPoint& alpha);

/// u(z) = sum of mass * (1-|z|^2)/|xi - z|^2.
double poisson_extension(const CircleMeasure& mu, Complex z);

/// Re (alpha + F(z))/(alpha - F(z)) = (1-|F(z)|^2)/|alpha - F(z)|^2.
double herglotz_real_part(const BlaschkeProduct& F, const BoundaryPoint& alpha, Complex z);

/// mu(I)/|I| with |I| in normalized measure.
double arc_mean(const CircleMeasure& mu, const Arc& I);

struct HeavyArcResult {
    bool heavy;
    double margin;  // mu(I)/|I| - (1/100) u(z_I)
    double mean;
    double poisson_at_center;
};

/// Heavy-arc test at the fixed constant 1/100; both sides zero reports not-heavy.
HeavyArcResult is_heavy_arc(const CircleMeasure& mu, const Arc& I);

struct LightSubarc {
    Arc arc;
    double delta;     // |J|/|I| = 2^-depth
    double mean;      // mu(J)/|J|
    double relative;  // mean / (mu(I)/|I|); 0 when the parent mean is 0
};

/// Largest dyadic sub-arc (halving ladder, down to relative length delta_min)
/// whose mean is at most eps times the mean over I; depth 0 qualifies at eps >= 1.
std::optional<LightSubarc> light_subarc_search(const CircleMeasure& mu, const Arc& I,
                                               double eps, double delta_min);

struct GradientIdentityResult {
    double lhs;           // 2 D_h F(z)
    double rhs;           // (1-|z|^2) |grad u(z)| / u(z) from the atomic closed form
    double relative_gap;  // |lhs-rhs| / max(|lhs|, |rhs|), 0 when both vanish
};

/// Checks 2 D_h F(z) = (1-|z|^2)|grad u|/u with u the Poisson extension of
/// mu_alpha(F); the right side uses the closed-form gradient of the atom sum.
GradientIdentityResult gradient_identity_check(const BlaschkeProduct& F,
                                               const BoundaryPoint& alpha, Complex z);

}  // namespace bcdiag
