#include "bcdiag/clark.hpp"

#include <algorithm>
#include <cmath>

namespace bcdiag {

double CircleMeasure::total_mass() const {
    double sum = 0.0;
    for (const Atom& a : atoms) sum += a.mass;
    return sum;
}

bool Arc::contains(double angle) const {
    const double span = kTwoPi * length;
    double rel = std::fmod(angle - (center_angle - span / 2.0), kTwoPi);
    if (rel < 0.0) rel += kTwoPi;
    return rel < span;
}

namespace {

double principal_arg_ratio(Complex next, Complex prev) {
    return std::arg(next / prev);
}

}  // namespace

CircleMeasure clark_measure(const BlaschkeProduct& F, const BoundaryPoint& alpha) {
    const int d = F.degree();

    // Scan resolution: the phase advances by at most speed_max * step per step;
    // keep every increment well under pi/2 so unwrapping stays unambiguous.
    double speed_max = 0.0;
    for (const DiskPoint& a : F.zeros()) {
        speed_max += (1.0 + a.abs()) / (1.0 - a.abs());
    }
    const size_t n_scan = std::max<size_t>(1024 * static_cast<size_t>(d),
                                           static_cast<size_t>(8.0 * speed_max) + 1);
    const double step = kTwoPi / static_cast<double>(n_scan);

    std::vector<Complex> boundary_values(n_scan + 1);
    for (size_t j = 0; j <= n_scan; ++j) {
        boundary_values[j] = F.evaluate(std::polar(1.0, step * static_cast<double>(j)));
    }

    // Unwrapped phase phi(theta_j); strictly increasing for a Blaschke product.
    std::vector<double> phase(n_scan + 1);
    phase[0] = std::arg(boundary_values[0]);
    for (size_t j = 1; j <= n_scan; ++j) {
        const double inc = principal_arg_ratio(boundary_values[j], boundary_values[j - 1]);
        if (!(inc > 0.0) || inc > 0.5 * kPi) {
            throw NumericalError("clark_measure: phase bracketing failed (non-monotone scan)");
        }
        phase[j] = phase[j - 1] + inc;
    }
    const double total = phase[n_scan] - phase[0];
    if (std::abs(total - kTwoPi * d) > 1e-6) {
        throw NumericalError("clark_measure: total phase increase != 2 pi d");
    }

    // Solutions of phi(theta) = arg(alpha) + 2 pi k inside [phase[0], phase[0] + 2 pi d).
    const double psi = alpha.angle;
    double target = psi + kTwoPi * std::ceil((phase[0] - psi) / kTwoPi);
    if (target < phase[0]) target += kTwoPi;  // guard rounding at the seam

    CircleMeasure mu;
    mu.atoms.reserve(static_cast<size_t>(d));
    size_t j = 0;
    for (int k = 0; k < d; ++k, target += kTwoPi) {
        while (j < n_scan && phase[j + 1] < target) ++j;
        if (j >= n_scan) {
            throw NumericalError("clark_measure: ran out of brackets");
        }
        // Bisection on [theta_j, theta_{j+1}] with phase measured from the anchor.
        double lo = step * static_cast<double>(j);
        double hi = step * static_cast<double>(j + 1);
        const Complex anchor = boundary_values[j];
        const double local_target = target - phase[j];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double val = principal_arg_ratio(F.evaluate(std::polar(1.0, mid)), anchor);
            if (val < local_target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        double angle = std::fmod(0.5 * (lo + hi), kTwoPi);
        if (angle < 0.0) angle += kTwoPi;
        mu.atoms.push_back({angle, 1.0 / F.boundary_phase_speed(angle)});
    }
    std::sort(mu.atoms.begin(), mu.atoms.end(),
              [](const CircleMeasure::Atom& a, const CircleMeasure::Atom& b) {
                  return a.angle < b.angle;
              });

    const Complex f0 = F.evaluate(0.0);
    const Complex av = alpha.value();
    mu.herglotz_constant = std::imag((av + f0) / (av - f0));
    return mu;
}

double poisson_extension(const CircleMeasure& mu, Complex z) {
    const double zfac = 1.0 - std::norm(z);
    double sum = 0.0;
    for (const auto& atom : mu.atoms) {
        sum += atom.mass * zfac / std::norm(std::polar(1.0, atom.angle) - z);
    }
    return sum;
}

double herglotz_real_part(const BlaschkeProduct& F, const BoundaryPoint& alpha, Complex z) {
    return F.one_minus_modulus_squared(z) / std::norm(alpha.value() - F.evaluate(z));
}

double arc_mean(const CircleMeasure& mu, const Arc& I) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms) {
        if (I.contains(atom.angle)) sum += atom.mass;
    }
    return sum / I.length;
}

HeavyArcResult is_heavy_arc(const CircleMeasure& mu, const Arc& I) {
    const double mean = arc_mean(mu, I);
    const double u = poisson_extension(mu, I.carleson_center().value());
    const double margin = mean - u / 100.0;
    const bool degenerate = mean == 0.0 && u == 0.0;
    return HeavyArcResult{!degenerate && margin >= 0.0, margin, mean, u};
}

std::optional<LightSubarc> light_subarc_search(const CircleMeasure& mu, const Arc& I,
                                               double eps, double delta_min) {
    if (!(eps > 0.0)) throw ValidationError("light_subarc_search: eps must be positive");
    if (!(delta_min > 0.0 && delta_min <= 1.0)) {
        throw ValidationError("light_subarc_search: delta_min must lie in (0, 1]");
    }
    const double parent_mean = arc_mean(mu, I);
    const double span = kTwoPi * I.length;
    for (int depth = 0; std::ldexp(1.0, -depth) >= delta_min; ++depth) {
        const double frac = std::ldexp(1.0, -depth);
        const double sub_span = span * frac;
        const std::int64_t count = std::int64_t{1} << depth;
        for (std::int64_t k = 0; k < count; ++k) {
            const double center = I.center_angle - span / 2.0 +
                                  sub_span * (static_cast<double>(k) + 0.5);
            const Arc J(center, I.length * frac);
            const double mean = arc_mean(mu, J);
            if (mean <= eps * parent_mean) {
                const double rel = parent_mean > 0.0 ? mean / parent_mean : 0.0;
                return LightSubarc{J, frac, mean, rel};
            }
        }
    }
    return std::nullopt;
}

GradientIdentityResult gradient_identity_check(const BlaschkeProduct& F,
                                               const BoundaryPoint& alpha, Complex z) {
    const CircleMeasure mu = clark_measure(F, alpha);
    const double lhs = 2.0 * F.hyperbolic_derivative(z);

    // (1-|z|^2) |grad u(z)| = 2 | sum of mass (1-|z|^2)(1 - conj(z) xi) / (|xi-z|^2 (xi-z)) |.
    // The sum can cancel by many orders next to critical points, so it is
    // accumulated with Neumaier compensation.
    const double zfac = 1.0 - std::norm(z);
    double acc_re = 0.0, comp_re = 0.0, acc_im = 0.0, comp_im = 0.0;
    auto add = [](double& acc, double& comp, double x) {
        const double t = acc + x;
        comp += std::abs(acc) >= std::abs(x) ? (acc - t) + x : (x - t) + acc;
        acc = t;
    };
    for (const auto& atom : mu.atoms) {
        const Complex xi = std::polar(1.0, atom.angle);
        const Complex term =
            atom.mass * zfac * (1.0 - std::conj(z) * xi) / (std::norm(xi - z) * (xi - z));
        add(acc_re, comp_re, term.real());
        add(acc_im, comp_im, term.imag());
    }
    const Complex grad_sum(acc_re + comp_re, acc_im + comp_im);
    const double u = poisson_extension(mu, z);
    const double rhs = 2.0 * std::abs(grad_sum) / u;

    // Both sides below 1e-12 means agreement to numerical precision (e.g. the
    // symmetric-atom configurations where the true value is 0).
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    const double gap = denom > 1e-12 ? std::abs(lhs - rhs) / denom : 0.0;
    return GradientIdentityResult{lhs, rhs, gap};
}

}  // namespace bcdiag
