#include "bcdiag/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcdiag/disk_geometry.hpp"
#include "bcdiag/errors.hpp"

namespace bcdiag {

namespace {

using C = std::complex<double>;

// p(x), p'(x) and the running magnitude bound sum |c_i| |x|^i (backward-error
// scale) in one Horner pass.
struct Eval {
    C p;
    C dp;
    double scale;
};

Eval eval_poly(const std::vector<C>& c, C x) {
    const double ax = std::abs(x);
    C p = c.back();
    C dp = 0.0;
    double s = std::abs(c.back());
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        dp = dp * x + p;
        p = p * x + c[static_cast<size_t>(i)];
        s = s * ax + std::abs(c[static_cast<size_t>(i)]);
    }
    return {p, dp, s};
}

// Starting guesses on circles whose radii come from the upper convex hull of
// (k, log|c_k|); clusters of very different magnitudes each get their own ring.
std::vector<C> initial_guesses(const std::vector<C>& c) {
    const size_t n = c.size() - 1;
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logc(n + 1, neg_inf);
    for (size_t k = 0; k <= n; ++k) {
        if (c[k] != C(0.0)) logc[k] = std::log(std::abs(c[k]));
    }

    std::vector<size_t> hull;  // upper convex hull indices, left to right
    for (size_t k = 0; k <= n; ++k) {
        if (logc[k] == neg_inf) continue;
        while (hull.size() >= 2) {
            const size_t a = hull[hull.size() - 2];
            const size_t b = hull[hull.size() - 1];
            const double cross = (static_cast<double>(b - a)) * (logc[k] - logc[a]) -
                                 (static_cast<double>(k - a)) * (logc[b] - logc[a]);
            if (cross >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }

    std::vector<C> z;
    z.reserve(n);
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        const size_t ka = hull[e];
        const size_t kb = hull[e + 1];
        const double radius = std::exp((logc[ka] - logc[kb]) / static_cast<double>(kb - ka));
        const size_t count = kb - ka;
        for (size_t j = 0; j < count; ++j) {
            const double angle = kTwoPi * (static_cast<double>(j) + 0.35) /
                                     static_cast<double>(count) +
                                 0.79 * static_cast<double>(e) + 0.42;
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

}  // namespace

std::vector<C> polynomial_roots(const std::vector<C>& coeffs) {
    std::vector<C> c = coeffs;

    double coeff_scale = 0.0;
    for (const C& a : c) coeff_scale = std::max(coeff_scale, std::abs(a));
    if (coeff_scale == 0.0) {
        throw ValidationError("polynomial_roots: zero polynomial");
    }
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * coeff_scale) c.pop_back();

    // exactly-zero low coefficients are roots at the origin
    std::vector<C> origin_roots;
    while (c.size() > 1 && c.front() == C(0.0)) {
        origin_roots.emplace_back(0.0, 0.0);
        c.erase(c.begin());
    }

    const size_t n = c.size() - 1;
    if (n == 0) return origin_roots;
    if (n == 1) {
        origin_roots.push_back(-c[0] / c[1]);
        return origin_roots;
    }

    std::vector<C> z = initial_guesses(c);
    std::vector<bool> settled(n, false);

    const double eps = std::numeric_limits<double>::epsilon();
    const int max_iter = 1000;
    bool all_settled = false;
    for (int iter = 0; iter < max_iter && !all_settled; ++iter) {
        all_settled = true;
        for (size_t k = 0; k < n; ++k) {
            if (settled[k]) continue;
            const Eval e = eval_poly(c, z[k]);
            // backward-stable stop: residual below the rounding floor of p(z)
            if (std::abs(e.p) <= 4.0 * eps * e.scale) {
                settled[k] = true;
                continue;
            }
            all_settled = false;
            C w;
            if (e.dp == C(0.0)) {
                w = C(1e-8, 1e-8);
            } else {
                w = e.p / e.dp;
            }
            C repulsion = 0.0;
            for (size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const C d = z[k] - z[j];
                if (d == C(0.0)) continue;
                repulsion += 1.0 / d;
            }
            const C denom = 1.0 - w * repulsion;
            const C step = (std::abs(denom) < 1e-300) ? w : w / denom;
            if (!std::isfinite(std::abs(step))) {
                settled[k] = true;  // leave for the polish pass
                continue;
            }
            z[k] -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z[k]))) settled[k] = true;
        }
    }
    if (!all_settled) {
        // multiple roots settle slowly; accept anything already at its rounding
        // floor and reject genuinely stuck iterates
        for (size_t k = 0; k < n; ++k) {
            const Eval e = eval_poly(c, z[k]);
            if (std::abs(e.p) > 1e6 * eps * e.scale) {
                throw NumericalError("polynomial_roots: Aberth iteration did not settle");
            }
        }
    }

    // Newton polish; skipped where the derivative collapses (multiple roots).
    for (size_t k = 0; k < n; ++k) {
        for (int it = 0; it < 4; ++it) {
            const Eval e = eval_poly(c, z[k]);
            if (std::abs(e.dp) < 1e-14 * (1.0 + std::abs(e.p))) break;
            const C step = e.p / e.dp;
            if (!std::isfinite(std::abs(step)) ||
                std::abs(step) > 0.1 * (1.0 + std::abs(z[k]))) {
                break;
            }
            z[k] -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z[k]))) break;
        }
    }
    z.insert(z.end(), origin_roots.begin(), origin_roots.end());
    return z;
}

}  // namespace bcdiag
