#include "bcdiag/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcdiag/poly_roots.hpp"

namespace bcdiag {

BlaschkeProduct::BlaschkeProduct(std::vector<DiskPoint> zeros, double prefactor_angle)
    : zeros_(std::move(zeros)), prefactor_angle_(prefactor_angle) {
    if (zeros_.empty()) {
        throw ValidationError("BlaschkeProduct requires degree >= 1");
    }
}

Complex BlaschkeProduct::evaluate(Complex z) const {
    Complex p = std::polar(1.0, prefactor_angle_);
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        p *= (z - a) / (1.0 - std::conj(a) * z);
    }
    return p;
}

double BlaschkeProduct::log_modulus(Complex z) const {
    const double zfac = 1.0 - std::norm(z);
    double sum = 0.0;
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        const double g = zfac * (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * z);
        if (g >= 1.0) return -std::numeric_limits<double>::infinity();  // z at a zero
        sum += 0.5 * std::log1p(-g);
    }
    return sum;
}

double BlaschkeProduct::one_minus_modulus_squared(Complex z) const {
    return -std::expm1(2.0 * log_modulus(z));
}

double BlaschkeProduct::one_minus_modulus(Complex z) const {
    return -std::expm1(log_modulus(z));
}

Complex BlaschkeProduct::derivative_product_rule(Complex z) const {
    // F' = e^{i theta} sum_n m_n'(z) prod_{m != n} m_m(z); finite at the zeros.
    const size_t d = zeros_.size();
    std::vector<Complex> factor(d);
    for (size_t n = 0; n < d; ++n) {
        const Complex a = zeros_[n].value();
        factor[n] = (z - a) / (1.0 - std::conj(a) * z);
    }
    // prefix/suffix products so repeated zeros cost O(d) instead of O(d^2)
    std::vector<Complex> prefix(d + 1), suffix(d + 1);
    prefix[0] = 1.0;
    for (size_t n = 0; n < d; ++n) prefix[n + 1] = prefix[n] * factor[n];
    suffix[d] = 1.0;
    for (size_t n = d; n-- > 0;) suffix[n] = suffix[n + 1] * factor[n];

    Complex sum = 0.0;
    for (size_t n = 0; n < d; ++n) {
        const Complex a = zeros_[n].value();
        const Complex den = 1.0 - std::conj(a) * z;
        const Complex mprime = (1.0 - std::norm(a)) / (den * den);
        sum += mprime * prefix[n] * suffix[n + 1];
    }
    return std::polar(1.0, prefactor_angle_) * sum;
}

Complex BlaschkeProduct::derivative(Complex z) const {
    double min_rho = 1.0;
    for (const DiskPoint& zp : zeros_) {
        min_rho = std::min(min_rho, detail::rho(z, zp.value()));
    }
    if (min_rho < 1e-6) return derivative_product_rule(z);

    Complex sum = 0.0;
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        sum += (1.0 - std::norm(a)) / ((z - a) * (1.0 - std::conj(a) * z));
    }
    return evaluate(z) * sum;
}

double BlaschkeProduct::hyperbolic_derivative(Complex z) const {
    return (1.0 - std::norm(z)) * std::abs(derivative(z)) / one_minus_modulus_squared(z);
}

double BlaschkeProduct::zero_sum_surrogate(Complex z) const {
    const double zfac = 1.0 - std::norm(z);
    double sum = 0.0;
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        sum += zfac * (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * z);
    }
    return sum;
}

Complex BlaschkeProduct::log_derivative_sum(Complex z) const {
    const double zfac = 1.0 - std::norm(z);
    Complex sum = 0.0;
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        if (detail::rho(z, a) < 1e-9) {
            throw SingularInputError("log_derivative_sum: z within 1e-9 of a zero");
        }
        const Complex dir = (a - z) / (1.0 - a * std::conj(z));
        sum += zfac * (1.0 - std::norm(a)) / (std::norm(1.0 - std::conj(a) * z) * dir);
    }
    return sum;
}

double BlaschkeProduct::boundary_phase_speed(double theta) const {
    const Complex xi = std::polar(1.0, theta);
    double sum = 0.0;
    for (const DiskPoint& zp : zeros_) {
        const Complex a = zp.value();
        sum += (1.0 - std::norm(a)) / std::norm(xi - a);
    }
    return sum;
}

CriticalSet critical_points(const BlaschkeProduct& F) {
    const auto& zeros = F.zeros();
    const size_t d = zeros.size();
    if (d == 1) return {};

    // Numerator of F': W(z) = sum_n (1-|a_n|^2) prod_{m != n} (z-a_m)(1-conj(a_m) z),
    // degree <= 2d-2, with the d-1 interior roots being crit F.
    std::vector<Complex> W(2 * d - 1, 0.0);
    std::vector<Complex> term;
    term.reserve(2 * d - 1);
    for (size_t n = 0; n < d; ++n) {
        term.assign(1, Complex(1.0 - std::norm(zeros[n].value())));
        for (size_t m = 0; m < d; ++m) {
            if (m == n) continue;
            const Complex a = zeros[m].value();
            // multiply by (z - a)
            term.push_back(0.0);
            for (size_t k = term.size() - 1; k > 0; --k) term[k] = term[k - 1] - a * term[k];
            term[0] *= -a;
            // multiply by (1 - conj(a) z)
            term.push_back(0.0);
            for (size_t k = term.size() - 1; k > 0; --k)
                term[k] = term[k] - std::conj(a) * term[k - 1];
        }
        for (size_t k = 0; k < term.size(); ++k) W[k] += term[k];
    }

    std::vector<Complex> roots = polynomial_roots(W);

    std::vector<Complex> interior;
    for (const Complex& r : roots) {
        if (std::abs(r) < 1.0) interior.push_back(r);
    }
    if (interior.size() != d - 1) {
        throw NumericalError("critical_points: expected " + std::to_string(d - 1) +
                             " interior roots, found " + std::to_string(interior.size()));
    }

    // Local refinement on F' itself: the coefficient representation of W is
    // ill-conditioned at higher degrees, while the Newton update for F' = F S
    // reduces to S / (S^2 + S') with per-factor sums. Roots sitting at a
    // repeated zero are critical points exactly there; snap instead.
    auto zero_multiplicity = [&](Complex a) {
        size_t count = 0;
        for (const DiskPoint& zp : zeros) {
            if (detail::rho(a, zp.value()) <= 1e-12) ++count;
        }
        return count;
    };
    for (Complex& r : interior) {
        Complex nearest = zeros[0].value();
        double best = 2.0;
        for (const DiskPoint& zp : zeros) {
            const double dist = detail::rho(r, zp.value());
            if (dist < best) {
                best = dist;
                nearest = zp.value();
            }
        }
        if (best <= 1e-7 && zero_multiplicity(nearest) >= 2) {
            r = nearest;
            continue;
        }
        for (int it = 0; it < 30; ++it) {
            Complex s = 0.0, sp = 0.0;
            for (const DiskPoint& zp : zeros) {
                const Complex a = zp.value();
                const Complex u = r - a;
                const Complex v = 1.0 - std::conj(a) * r;
                const double w = 1.0 - std::norm(a);
                s += w / (u * v);
                sp -= w * (1.0 - 2.0 * std::conj(a) * r + std::norm(a)) / (u * u * v * v);
            }
            const Complex denom = s * s + sp;
            if (std::abs(denom) < 1e-300) break;
            const Complex step = s / denom;
            if (!std::isfinite(std::abs(step)) || std::abs(r - step) >= 1.0) break;
            r -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
        }
    }

    double weight_sum = 0.0;
    for (const DiskPoint& zp : zeros) weight_sum += 1.0 - std::norm(zp.value());
    const double tol = 1e-10 * weight_sum;
    for (const Complex& c : interior) {
        if (std::abs(F.derivative(c)) > tol) {
            throw NumericalError("critical_points: residual |F'(c)| above tolerance");
        }
    }

    // Cluster-merge at pseudohyperbolic radius 1e-7 so double roots come out as
    // one point repeated with multiplicity.
    std::sort(interior.begin(), interior.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    CriticalSet out;
    std::vector<bool> used(interior.size(), false);
    for (size_t i = 0; i < interior.size(); ++i) {
        if (used[i]) continue;
        Complex centroid = interior[i];
        size_t count = 1;
        for (size_t j = i + 1; j < interior.size(); ++j) {
            if (used[j]) continue;
            if (detail::rho(interior[i], interior[j]) <= 1e-7) {
                centroid += interior[j];
                ++count;
                used[j] = true;
            }
        }
        centroid /= static_cast<double>(count);
        for (size_t k = 0; k < count; ++k) out.points.emplace_back(centroid);
    }
    return out;
}

}  // namespace bcdiag
