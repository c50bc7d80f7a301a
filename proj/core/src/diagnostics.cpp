#include "bcdiag/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bcdiag {

namespace {

constexpr double kGauss8Nodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGauss8Weights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Conjugation that turns ball-local sweeps into the radial picture: v in the
// disk of pseudohyperbolic radius tanh(R/2) maps to m(v) in B_h(z, R).
struct BallFrame {
    Complex z;
    double t;  // tanh(R/2)

    BallFrame(const DiskPoint& center, double R) : z(center.value()), t(std::tanh(R / 2.0)) {
        if (!(R > 0.0)) throw ValidationError("ball radius must be positive");
    }
    Complex map(Complex v) const { return (v + z) / (1.0 + std::conj(z) * v); }
};

// Exact winding number of a closed polygon around q (crossing rule).
int polygon_winding(const std::vector<Complex>& poly, Complex q) {
    const double qx = q.real();
    const double qy = q.imag();
    int wn = 0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex& p1 = poly[i];
        const Complex& p2 = poly[(i + 1) % n];
        const double is_left = (p2.real() - p1.real()) * (qy - p1.imag()) -
                               (qx - p1.real()) * (p2.imag() - p1.imag());
        if (p1.imag() <= qy) {
            if (p2.imag() > qy && is_left > 0.0) ++wn;
        } else if (p2.imag() <= qy && is_left < 0.0) {
            --wn;
        }
    }
    return wn;
}

std::vector<Complex> image_curve(const BlaschkeProduct& F, const DiskPoint& z, double R,
                                 int nodes) {
    const BallFrame frame(z, R);
    std::vector<Complex> curve(static_cast<size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
        curve[static_cast<size_t>(j)] = F.evaluate(frame.map(std::polar(frame.t, phi)));
    }
    return curve;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

std::vector<DiskPoint> center_grid(int base_level, int max_level, double r_max) {
    std::vector<DiskPoint> grid;
    grid.emplace_back(Complex(0.0, 0.0));
    for (int level = base_level; level <= max_level; ++level) {
        if (1.0 - std::ldexp(1.0, -level - 1) > r_max) break;
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
            grid.push_back(square_geometry(make_square(level, k, base_level)).center);
        }
    }
    return grid;
}

std::vector<Complex> ball_boundary_points(const DiskPoint& z, double R, int n) {
    const BallFrame frame(z, R);
    std::vector<Complex> pts(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        pts[static_cast<size_t>(j)] = frame.map(std::polar(frame.t, phi));
    }
    return pts;
}

double image_diameter_sampled(const std::vector<Complex>& image_points) {
    double best = 0.0;
    const size_t n = image_points.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            best = std::max(best, detail::dist_h(image_points[i], image_points[j]));
        }
    }
    return best;
}

double image_diameter(const BlaschkeProduct& F, const DiskPoint& z, double R,
                      int n_boundary) {
    if (n_boundary < 64) throw ValidationError("image_diameter: need >= 64 boundary samples");
    std::vector<Complex> images(static_cast<size_t>(n_boundary));
    const std::vector<Complex> pts = ball_boundary_points(z, R, n_boundary);
    for (size_t j = 0; j < pts.size(); ++j) images[j] = F.evaluate(pts[j]);
    return image_diameter_sampled(images);
}

double image_area_with_multiplicity(const BlaschkeProduct& F, const DiskPoint& z,
                                    double R, const QuadratureSpec& spec) {
    if (spec.radial < 1 || spec.angular < 4) {
        throw ValidationError("image_area_with_multiplicity: bad quadrature spec");
    }
    const BallFrame frame(z, R);

    // Pulled back through the ball frame the integrand is D_h F(m(v))^2 against
    // the fixed radial kernel 4 s/(1-s^2)^2 ds dphi on s in [0, t].
    auto pass = [&](int panels, int n_phi) {
        double total = 0.0;
        const double panel_width = frame.t / static_cast<double>(panels);
        for (int p = 0; p < panels; ++p) {
            const double s0 = panel_width * static_cast<double>(p);
            for (int g = 0; g < 8; ++g) {
                const double s = s0 + panel_width * 0.5 * (1.0 + kGauss8Nodes[g]);
                const double kern = 4.0 * s / ((1.0 - s * s) * (1.0 - s * s));
                double ring = 0.0;
                for (int j = 0; j < n_phi; ++j) {
                    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
                    const double dh = F.hyperbolic_derivative(frame.map(std::polar(s, phi)));
                    ring += dh * dh;
                }
                ring *= kTwoPi / static_cast<double>(n_phi);
                total += kGauss8Weights[g] * panel_width * 0.5 * kern * ring;
            }
        }
        return total;
    };

    int panels = spec.radial / 8 + 1;
    int n_phi = spec.angular;
    double prev = pass(panels, n_phi);
    for (int refine = 0; refine < spec.max_refine; ++refine) {
        panels *= 2;
        n_phi *= 2;
        const double next = pass(panels, n_phi);
        const double change = std::abs(next - prev);
        prev = next;
        if (change <= spec.rel_tol * std::abs(next) + 1e-14) return next;
    }
    throw NumericalError("image_area_with_multiplicity: quadrature did not converge");
}

AreaEstimate image_area_sampled(const BlaschkeProduct& F, const DiskPoint& z, double R,
                                const TargetGridSpec& grid) {
    if (grid.radial <= 0 || grid.angular <= 0) {
        return AreaEstimate{0.0, true};
    }
    const std::vector<Complex> curve = image_curve(F, z, R, grid.boundary_nodes);

    double r_img = 0.0;
    for (const Complex& w : curve) r_img = std::max(r_img, std::abs(w));
    r_img = std::min(1.0 - 1e-9, r_img * (1.0 + 1e-12));
    if (r_img == 0.0) return AreaEstimate{0.0, false};

    double area = 0.0;
    for (int i = 0; i < grid.radial; ++i) {
        const double s1 = r_img * static_cast<double>(i) / static_cast<double>(grid.radial);
        const double s2 = r_img * static_cast<double>(i + 1) / static_cast<double>(grid.radial);
        const double sc = 0.5 * (s1 + s2);
        // exact hyperbolic area of the cell ring per unit angle fraction
        const double ring_area = 2.0 * (1.0 / (1.0 - s2 * s2) - 1.0 / (1.0 - s1 * s1));
        for (int j = 0; j < grid.angular; ++j) {
            const double phi = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid.angular);
            if (polygon_winding(curve, std::polar(sc, phi)) >= 1) {
                area += ring_area * kTwoPi / static_cast<double>(grid.angular);
            }
        }
    }
    return AreaEstimate{area, false};
}

double max_hyperbolic_derivative(const BlaschkeProduct& F, const DiskPoint& z, double R,
                                 const BallGridSpec& grid) {
    if (grid.radial < 2 || grid.angular < 4) {
        throw ValidationError("max_hyperbolic_derivative: bad grid spec");
    }
    const BallFrame frame(z, R);

    double best = F.hyperbolic_derivative(frame.map(0.0));
    double best_s = 0.0, best_phi = 0.0;
    const double ds = frame.t / static_cast<double>(grid.radial);
    const double dphi = kTwoPi / static_cast<double>(grid.angular);
    for (int i = 1; i <= grid.radial; ++i) {
        const double s = ds * static_cast<double>(i);  // outer ring included
        for (int j = 0; j < grid.angular; ++j) {
            const double phi = dphi * static_cast<double>(j);
            const double v = F.hyperbolic_derivative(frame.map(std::polar(s, phi)));
            if (v > best) {
                best = v;
                best_s = s;
                best_phi = phi;
            }
        }
    }
    // one refinement sweep around the argmax
    const int fine = 8;
    for (int a = -fine; a <= fine; ++a) {
        const double s = std::clamp(best_s + ds * static_cast<double>(a) / fine, 0.0, frame.t);
        for (int b = -fine; b <= fine; ++b) {
            const double phi = best_phi + dphi * static_cast<double>(b) / fine;
            best = std::max(best, F.hyperbolic_derivative(frame.map(std::polar(s, phi))));
        }
    }
    return best;
}

int preimage_count(const BlaschkeProduct& F, const HyperbolicBall& ball, Complex q) {
    if (!(std::abs(q) < 1.0)) throw ValidationError("preimage_count: |q| must be < 1");
    const EuclideanDisk disk = ball_to_euclidean(ball);

    const int n0 = std::max(256, 32 * F.degree());
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double offset = 0.37 * static_cast<double>(attempt) / static_cast<double>(n0);
        bool proximity = false;
        double total = 0.0;
        bool refined_ok = true;

        auto value_at = [&](double psi) {
            return F.evaluate(disk.center + std::polar(disk.radius, psi)) - q;
        };

        // Sum argument increments, bisecting any segment whose increment is
        // ambiguous (>= pi/2); recursion depth bounds the refinement.
        auto segment = [&](auto&& self, double a, double b, Complex fa, Complex fb,
                           int depth) -> double {
            if (std::abs(fa) < 1e-9 || std::abs(fb) < 1e-9) {
                proximity = true;
                return 0.0;
            }
            const double inc = std::arg(fb / fa);
            if (std::abs(inc) < kPi / 2.0) return inc;
            if (depth >= 40) {
                refined_ok = false;
                return inc;
            }
            const double m = 0.5 * (a + b);
            const Complex fm = value_at(m);
            return self(self, a, m, fa, fm, depth + 1) + self(self, m, b, fm, fb, depth + 1);
        };

        std::vector<Complex> vals(static_cast<size_t>(n0));
        for (int j = 0; j < n0; ++j) {
            vals[static_cast<size_t>(j)] =
                value_at(kTwoPi * (static_cast<double>(j) + offset) / n0);
        }
        for (int j = 0; j < n0 && !proximity; ++j) {
            const double a = kTwoPi * (static_cast<double>(j) + offset) / n0;
            const double b = kTwoPi * (static_cast<double>(j) + 1.0 + offset) / n0;
            total += segment(segment, a, b, vals[static_cast<size_t>(j)],
                             vals[static_cast<size_t>((j + 1) % n0)], 0);
        }
        if (proximity) continue;  // resample with shifted nodes
        if (!refined_ok) {
            throw NumericalError("preimage_count: argument refinement exhausted");
        }
        const double w = total / kTwoPi;
        const long rounded = std::lround(w);
        if (std::abs(w - static_cast<double>(rounded)) > 0.25 || rounded < 0) {
            throw NumericalError("preimage_count: winding sum not integral");
        }
        return static_cast<int>(rounded);
    }
    throw NumericalError("preimage_count: q within 1e-9 of the image of the boundary");
}

double ball_containment_radius(const BlaschkeProduct& F, const DiskPoint& z, double R,
                               double resolution, int n_targets, int boundary_nodes) {
    if (!(resolution > 0.0)) throw ValidationError("ball_containment_radius: bad resolution");
    const std::vector<Complex> curve = image_curve(F, z, R, boundary_nodes);
    const Complex fz = F.evaluate(z.value());

    auto contained = [&](double c) {
        const EuclideanDisk target = ball_to_euclidean(HyperbolicBall{DiskPoint(fz), c});
        for (int j = 0; j < n_targets; ++j) {
            const double psi = kTwoPi * static_cast<double>(j) / static_cast<double>(n_targets);
            if (polygon_winding(curve, target.center + std::polar(target.radius, psi)) < 1) {
                return false;
            }
        }
        return true;
    };

    double lo = 0.0;
    double hi = R;  // c5 <= R by the Schwarz lemma
    if (contained(hi)) return hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (contained(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::optional<DescentWitness> descent_search(const BlaschkeProduct& F,
                                             const DyadicSquare& q, double eps,
                                             int n_max) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("descent_search: eps must lie in (0,1)");
    }
    const double parent = F.one_minus_modulus(square_geometry(q).center.value());
    for (int depth = 1; depth <= n_max; ++depth) {
        if (q.level + depth > 62) break;
        for (const DyadicSquare& child : descendants(q, depth)) {
            const double value = F.one_minus_modulus(square_geometry(child).center.value());
            // ties at rounding precision count as satisfied
            if (value <= eps * parent * (1.0 + 1e-11)) {
                return DescentWitness{q, child, depth, value / parent};
            }
        }
    }
    return std::nullopt;
}

DescentChain descent_chain(const BlaschkeProduct& F, const DiskPoint& z, double eps,
                           int chain_length, int n_max, int base_level) {
    // Smallest dyadic square over z with 1-|z| >= l(Q)/2; central points fall
    // back to the base-level square in their direction.
    const double gap = 1.0 - z.abs();
    int level = base_level;
    while (level < 40 && std::ldexp(1.0, -(level + 1)) > gap) ++level;
    double pos = std::arg(z.value()) / kTwoPi;
    pos -= std::floor(pos);
    const auto index = static_cast<std::int64_t>(std::floor(pos * std::ldexp(1.0, level)));
    DyadicSquare cur = make_square(level, std::min<std::int64_t>(index, (std::int64_t{1} << level) - 1),
                                   base_level);

    DescentChain chain;
    chain.squares.push_back(cur);
    chain.complete = true;
    for (int step = 0; step < chain_length; ++step) {
        if (cur.level + n_max > 62) {
            chain.complete = false;
            break;
        }
        const auto witness = descent_search(F, cur, eps, n_max);
        if (!witness) {
            chain.complete = false;
            break;
        }
        cur = witness->child;
        chain.squares.push_back(cur);
    }
    chain.endpoint = square_geometry(cur).midpoint;
    return chain;
}

QuasigeodesicFit quasigeodesic_fit(const BlaschkeProduct& F, const DiskPoint& z,
                                   const BoundaryPoint& xi, double t_max, int n_samples,
                                   double c_cap) {
    if (n_samples < 2) throw ValidationError("quasigeodesic_fit: need >= 2 samples");
    std::vector<Complex> w(static_cast<size_t>(n_samples));
    std::vector<Complex> fw(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        w[static_cast<size_t>(i)] = geodesic_point(z, xi, t).value();
        fw[static_cast<size_t>(i)] = F.evaluate(w[static_cast<size_t>(i)]);
    }
    std::vector<double> d, df;
    d.reserve(static_cast<size_t>(n_samples) * (n_samples - 1) / 2);
    df.reserve(d.capacity());
    for (int i = 0; i < n_samples; ++i) {
        for (int j = i + 1; j < n_samples; ++j) {
            d.push_back(detail::dist_h(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)]));
            df.push_back(detail::dist_h(fw[static_cast<size_t>(i)], fw[static_cast<size_t>(j)]));
        }
    }
    for (int step = 100; step >= 1; --step) {
        const double s = static_cast<double>(step) / 100.0;
        double c_needed = 0.0;
        for (size_t k = 0; k < d.size(); ++k) {
            c_needed = std::max(c_needed, s * d[k] - df[k]);
        }
        if (c_needed <= c_cap) {
            return QuasigeodesicFit{z, xi, s, c_needed, n_samples};
        }
    }
    return QuasigeodesicFit{z, xi, 0.01, c_cap, n_samples};
}

HolderEstimate holder_exponent(const BlaschkeProduct& F, const BoundaryPoint& xi,
                               const std::vector<double>& r_ladder) {
    if (r_ladder.size() < 2) throw ValidationError("holder_exponent: need >= 2 rungs");
    HolderEstimate est;
    std::vector<double> x, y;
    for (double r : r_ladder) {
        if (!(r > 0.0 && r < 1.0 - kDiskMargin)) {
            throw ValidationError("holder_exponent: ladder must stay within the margin");
        }
        const double one_minus_mod = F.one_minus_modulus(r * xi.value());
        est.table.push_back({r, 1.0 - r, one_minus_mod});
        x.push_back(std::log(1.0 - r));
        y.push_back(std::log(one_minus_mod));
    }
    est.s = least_squares_slope(x, y);
    return est;
}

double hyperbolic_area_function(const BlaschkeProduct& F, double theta, double r,
                                double aperture, const QuadratureSpec& spec) {
    if (!(aperture > 1.0)) throw ValidationError("hyperbolic_area_function: aperture must be > 1");
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("hyperbolic_area_function: r must be in (0,1)");

    // Angular half-width of the region slice at radius s.
    auto half_width = [&](double s) {
        if (s == 0.0) return kPi;
        const double g = (1.0 + s * s - aperture * aperture * (1.0 - s) * (1.0 - s)) / (2.0 * s);
        return std::acos(std::clamp(g, -1.0, 1.0));
    };

    // Radial substitution s = tanh(v/2) flattens the boundary layer of the
    // kernel: s/(1-s^2)^2 ds becomes sinh(v)/4 dv. The slice half-width stops
    // saturating at pi once s exceeds (aperture-1)/(aperture+1); the radial
    // integral is split there to keep each piece smooth.
    const double v_max = 2.0 * std::atanh(r);
    const double s_kink = (aperture - 1.0) / (aperture + 1.0);
    const double v_kink = std::clamp(2.0 * std::atanh(s_kink), 0.0, v_max);

    auto segment = [&](double va, double vb, int panels, int n_phi) {
        if (!(vb > va)) return 0.0;
        const int phi_panels = std::max(1, n_phi / 8);
        double total = 0.0;
        const double panel_width = (vb - va) / static_cast<double>(panels);
        for (int p = 0; p < panels; ++p) {
            const double v0 = va + panel_width * static_cast<double>(p);
            for (int g = 0; g < 8; ++g) {
                const double v = v0 + panel_width * 0.5 * (1.0 + kGauss8Nodes[g]);
                const double s = std::tanh(v / 2.0);
                const double hw = half_width(s);
                // Gauss panels across the (non-periodic) slice
                double slice = 0.0;
                const double phi_width = 2.0 * hw / static_cast<double>(phi_panels);
                for (int q = 0; q < phi_panels; ++q) {
                    const double phi0 = theta - hw + phi_width * static_cast<double>(q);
                    for (int j = 0; j < 8; ++j) {
                        const double phi = phi0 + phi_width * 0.5 * (1.0 + kGauss8Nodes[j]);
                        const double dh = F.hyperbolic_derivative(std::polar(s, phi));
                        slice += kGauss8Weights[j] * phi_width * 0.5 * dh * dh;
                    }
                }
                total += kGauss8Weights[g] * panel_width * 0.5 * std::sinh(v) / 4.0 * slice;
            }
        }
        return total;
    };
    auto pass = [&](int panels, int n_phi) {
        return segment(0.0, v_kink, panels, n_phi) + segment(v_kink, v_max, panels, n_phi);
    };

    int panels = spec.radial / 8 + 1;
    int n_phi = std::max(8, spec.angular / 8);
    double prev = pass(panels, n_phi);
    for (int refine = 0; refine < spec.max_refine; ++refine) {
        panels *= 2;
        n_phi *= 2;
        const double next = pass(panels, n_phi);
        const double change = std::abs(next - prev);
        prev = next;
        if (change <= spec.rel_tol * std::abs(next) + 1e-12) return next;
    }
    throw NumericalError("hyperbolic_area_function: quadrature did not converge");
}

double gauss_curvature_residual(const BlaschkeProduct& F, Complex z, double h,
                                const CriticalSet& crit) {
    if (!(h > 0.0)) throw ValidationError("gauss_curvature_residual: h must be positive");
    if (std::abs(z) + h >= 1.0 - kDiskMargin) {
        throw PreconditionError("gauss_curvature_residual: stencil leaves the disk");
    }
    for (const DiskPoint& c : crit.points) {
        if (detail::dist_h(z, c.value()) <= 0.1) {
            throw PreconditionError("gauss_curvature_residual: within 0.1 of a critical point");
        }
    }
    auto u = [&](Complex w) {
        return std::log(2.0 * std::abs(F.derivative(w)) / F.one_minus_modulus_squared(w));
    };
    const double u0 = u(z);
    const double lap = (u(z + h) + u(z - h) + u(z + Complex(0.0, h)) + u(z - Complex(0.0, h)) -
                        4.0 * u0) /
                       (h * h);
    return lap - std::exp(2.0 * u0);
}

double gauss_curvature_residual(const BlaschkeProduct& F, Complex z, double h) {
    return gauss_curvature_residual(F, z, h, critical_points(F));
}

std::vector<std::pair<double, double>> distortion_profile(
    const BlaschkeProduct& F, const std::vector<double>& eps_ladder,
    const BallGridSpec& grid, double r_max) {
    const CriticalSet crit = critical_points(F);

    // Hyperbolically uniform radii so the minimum next to the critical rings is resolved.
    std::vector<Complex> points;
    points.emplace_back(0.0, 0.0);
    const double u_max = std::log((1.0 + r_max) / (1.0 - r_max));
    for (int i = 1; i <= grid.radial; ++i) {
        const double s = std::tanh(u_max * static_cast<double>(i) /
                                   (2.0 * static_cast<double>(grid.radial)));
        for (int j = 0; j < grid.angular; ++j) {
            points.push_back(std::polar(s, kTwoPi * static_cast<double>(j) / grid.angular));
        }
    }

    std::vector<std::pair<double, double>> profile;
    profile.reserve(eps_ladder.size());
    for (double eps : eps_ladder) {
        double delta = std::numeric_limits<double>::infinity();
        for (const Complex& p : points) {
            bool admissible = true;
            for (const DiskPoint& c : crit.points) {
                if (detail::dist_h(p, c.value()) <= eps) {
                    admissible = false;
                    break;
                }
            }
            if (admissible) delta = std::min(delta, F.hyperbolic_derivative(p));
        }
        profile.emplace_back(eps, delta);
    }
    return profile;
}

JensenBalance jensen_balance(const BlaschkeProduct& F, double r, int n_nodes) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("jensen_balance: r must be in (0,1)");
    if (n_nodes < 16) throw ValidationError("jensen_balance: too few quadrature nodes");
    const Complex df0 = F.derivative(0.0);
    if (std::abs(df0) == 0.0) {
        throw PreconditionError("jensen_balance: F'(0) = 0");
    }
    const CriticalSet crit = critical_points(F);
    for (const DiskPoint& c : crit.points) {
        if (std::abs(c.abs() - r) <= 1e-6) {
            throw PreconditionError("jensen_balance: r within 1e-6 of a critical modulus");
        }
    }

    double mean = 0.0;
    for (int j = 0; j < n_nodes; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n_nodes);
        mean += std::log(std::abs(F.derivative(std::polar(r, theta))));
    }
    mean /= static_cast<double>(n_nodes);

    double zero_sum = 0.0;
    double bound_lhs = 0.0;
    for (const DiskPoint& c : crit.points) {
        if (c.abs() < r) {
            zero_sum += std::log(r / c.abs());
            bound_lhs += std::log(1.0 / c.abs());
        }
    }
    const double jensen_gap = mean - std::log(std::abs(df0)) - zero_sum;

    // (1/2pi) int over |z|<r of (1 - D_h^2 F) dA / (1-|z|), radial Gauss panels.
    const int panels = 48;
    const int n_phi = 256;
    double integral = 0.0;
    const double panel_width = r / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
        const double s0 = panel_width * static_cast<double>(p);
        for (int g = 0; g < 8; ++g) {
            const double s = s0 + panel_width * 0.5 * (1.0 + kGauss8Nodes[g]);
            double ring = 0.0;
            for (int j = 0; j < n_phi; ++j) {
                const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
                const double dh = F.hyperbolic_derivative(std::polar(s, phi));
                ring += 1.0 - dh * dh;
            }
            ring *= kTwoPi / static_cast<double>(n_phi);
            integral += kGauss8Weights[g] * panel_width * 0.5 * ring * s / (1.0 - s);
        }
    }
    integral /= kTwoPi;
    const double bound_rhs = integral + std::log(1.0 / std::abs(df0));
    return JensenBalance{mean, jensen_gap, bound_lhs, bound_rhs, bound_rhs - bound_lhs};
}

ConditionReport ball_condition_report(const BlaschkeProduct& F,
                                      const std::vector<DiskPoint>& centers,
                                      const BallSweepSpec& spec) {
    ConditionReport report;
    const size_t n = centers.size();
    report.labels.reserve(n);
    report.diameter.reserve(n);
    report.area_sampled.reserve(n);
    report.area_mult.reserve(n);
    report.max_derivative.reserve(n);
    report.containment.reserve(n);

    double c1 = std::numeric_limits<double>::infinity();
    double c2 = c1, c3 = c1, c4 = c1, c5 = c1;
    for (const DiskPoint& z : centers) {
        const Complex v = z.value();
        char label[64];
        std::snprintf(label, sizeof(label), "z=%.12g%+.12gi", v.real(), v.imag());
        report.labels.emplace_back(label);

        const double diam = image_diameter(F, z, spec.radius, spec.boundary_samples);
        const double area = image_area_sampled(F, z, spec.radius, spec.target_grid).value;
        const double area_mult =
            image_area_with_multiplicity(F, z, spec.radius, spec.quadrature);
        const double maxdh = max_hyperbolic_derivative(F, z, spec.radius, spec.ball_grid);
        const double cont = ball_containment_radius(F, z, spec.radius,
                                                    spec.containment_resolution);
        report.diameter.push_back(diam);
        report.area_sampled.push_back(area);
        report.area_mult.push_back(area_mult);
        report.max_derivative.push_back(maxdh);
        report.containment.push_back(cont);
        c1 = std::min(c1, diam);
        c2 = std::min(c2, area);
        c3 = std::min(c3, area_mult);
        c4 = std::min(c4, maxdh);
        c5 = std::min(c5, cont);
    }
    report.c1_min_diameter = c1;
    report.c2_min_area = c2;
    report.c3_min_area_mult = c3;
    report.c4_min_max_derivative = c4;
    report.c5_min_containment = c5;
    report.distortion = distortion_profile(F, spec.distortion_eps, spec.ball_grid, spec.r_max);
    return report;
}

}  // namespace bcdiag
