#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bcdiag/diagnostics.hpp"
#include "test_support.hpp"

using namespace bcdiag;
using namespace bcdiag::testing;

namespace {

BlaschkeProduct power_map(int d) {
    return BlaschkeProduct(std::vector<DiskPoint>(static_cast<size_t>(d), DiskPoint()));
}

const DiskPoint kOrigin(0.0, 0.0);

double hyperbolic_ball_area(double radius) {
    const double s = std::sinh(radius / 2.0);
    return 4.0 * kPi * s * s;
}

// Image of B_h(0,R) under z^2 is the disk of Euclidean radius tanh(R/2)^2.
double square_image_radius(double R) {
    const double t = std::tanh(R / 2.0);
    return t * t;
}

// Dense root scan for F(z) = q, degree <= 4: coarse grid minima of |F-q|
// polished by Newton steps on F - q.
int preimage_scan_oracle(const BlaschkeProduct& F, const HyperbolicBall& ball, Complex q) {
    const EuclideanDisk disk = ball_to_euclidean(ball);
    std::vector<Complex> roots;
    const int n = 160;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            Complex z(disk.center.real() + disk.radius * (2.0 * i / n - 1.0),
                      disk.center.imag() + disk.radius * (2.0 * j / n - 1.0));
            if (std::abs(z - disk.center) > disk.radius * 1.02) continue;
            for (int it = 0; it < 60; ++it) {
                const Complex f = F.evaluate(z) - q;
                const Complex df = F.derivative(z);
                if (std::abs(df) < 1e-14) break;
                const Complex step = f / df;
                z -= step;
                if (std::abs(step) < 1e-14) break;
            }
            if (std::abs(F.evaluate(z) - q) > 1e-10) continue;
            if (std::abs(z - disk.center) >= disk.radius) continue;
            bool fresh = true;
            for (const Complex& r : roots) {
                if (std::abs(r - z) < 1e-6) fresh = false;
            }
            if (fresh) roots.push_back(z);
        }
    }
    return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("image diameter of isometries is 2R") {
    const BlaschkeProduct id = power_map(1);
    CHECK(image_diameter(id, kOrigin, 1.0, 512) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(image_diameter(id, DiskPoint(0.0, 0.3), 1.0, 512) ==
          doctest::Approx(2.0).epsilon(1e-3));
    const BlaschkeProduct aut({DiskPoint(0.4, -0.1)}, 1.2);
    CHECK(image_diameter(aut, DiskPoint(0.2, 0.5), 1.5, 512) ==
          doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("image diameter of z^2 matches the closed form") {
    for (double R : {1.0, 2.0}) {
        const double x = square_image_radius(R);
        const double expected = 2.0 * std::log((1.0 + x) / (1.0 - x));
        CHECK(image_diameter(power_map(2), kOrigin, R, 512) ==
              doctest::Approx(expected).epsilon(2e-3));
    }
}

TEST_CASE("image diameter is invariant under pre-composition with isometries") {
    std::mt19937_64 rng(107);
    for (int it = 0; it < 6; ++it) {
        const BlaschkeProduct F = random_product(rng, 6, 0.8);
        const Mobius m = random_mobius(rng, 0.7);
        // F composed with the inverse of m, as a product: zeros at m(a_n)
        std::vector<DiskPoint> pulled;
        for (const DiskPoint& a : F.zeros()) pulled.push_back(mobius_apply(m, a));
        const BlaschkeProduct G(pulled, 0.37);
        const DiskPoint z = random_point(rng, 0.8);
        const double direct = image_diameter(F, z, 1.0, 512);
        const double conjugated = image_diameter(G, mobius_apply(m, z), 1.0, 512);
        CHECK(std::abs(direct - conjugated) <= 2e-3 * std::max(1.0, direct));
    }
}

TEST_CASE("image diameter grows with the radius") {
    const BlaschkeProduct F({DiskPoint(0.3, 0.0), DiskPoint(-0.2, 0.4)});
    double prev = 0.0;
    for (double R : {0.5, 1.0, 1.5, 2.0}) {
        const double cur = image_diameter(F, DiskPoint(0.1, 0.1), R, 256);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("area with multiplicity: closed forms") {
    const BlaschkeProduct id = power_map(1);
    CHECK(image_area_with_multiplicity(id, kOrigin, 1.0) ==
          doctest::Approx(hyperbolic_ball_area(1.0)).epsilon(1e-4));
    // isometry invariance: any automorphism, any center
    const BlaschkeProduct aut({DiskPoint(0.5, -0.3)}, 0.9);
    CHECK(image_area_with_multiplicity(aut, DiskPoint(0.2, 0.1), 1.0) ==
          doctest::Approx(hyperbolic_ball_area(1.0)).epsilon(1e-4));
    // double cover of the image disk
    const double x = square_image_radius(1.0);
    CHECK(image_area_with_multiplicity(power_map(2), kOrigin, 1.0) ==
          doctest::Approx(2.0 * 4.0 * kPi * x * x / (1.0 - x * x)).epsilon(1e-4));
}

TEST_CASE("sampled image area classifies the image set") {
    const double x = square_image_radius(1.0);
    const double expected = 4.0 * kPi * x * x / (1.0 - x * x);
    CHECK(image_area_sampled(power_map(2), kOrigin, 1.0).value ==
          doctest::Approx(expected).epsilon(0.02));
    CHECK(image_area_sampled(power_map(1), kOrigin, 1.0).value ==
          doctest::Approx(hyperbolic_ball_area(1.0)).epsilon(0.02));
    // off-center automorphism image: full ball again
    const BlaschkeProduct aut({DiskPoint(0.5, 0.0)});
    CHECK(image_area_sampled(aut, DiskPoint(0.3, 0.2), 1.0).value ==
          doctest::Approx(hyperbolic_ball_area(1.0)).epsilon(0.02));

    const AreaEstimate degenerate =
        image_area_sampled(power_map(1), kOrigin, 1.0, TargetGridSpec{0, 0, 64});
    CHECK(degenerate.value == 0.0);
    CHECK(degenerate.degenerate);
}

TEST_CASE("max hyperbolic derivative closed forms") {
    CHECK(max_hyperbolic_derivative(power_map(1), DiskPoint(0.3, -0.2), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_hyperbolic_derivative(power_map(2), kOrigin, 1.0) ==
          doctest::Approx(std::tanh(1.0)).epsilon(1e-4));
    CHECK(max_hyperbolic_derivative(power_map(2), kOrigin, 2.0) ==
          doctest::Approx(std::tanh(2.0)).epsilon(1e-4));
}

TEST_CASE("preimage counts for z^2") {
    const HyperbolicBall ball{kOrigin, 1.0};
    CHECK(preimage_count(power_map(2), ball, {0.0, 0.0}) == 2);
    CHECK(preimage_count(power_map(2), ball, {0.1, 0.0}) == 2);
    CHECK(preimage_count(power_map(2), ball, {0.25, 0.0}) == 0);
}

TEST_CASE("preimage count agrees with a dense root scan") {
    std::mt19937_64 rng(109);
    int done = 0;
    while (done < 100) {
        const BlaschkeProduct F = random_product(rng, 4, 0.7);
        const HyperbolicBall ball{random_point(rng, 0.5), 1.0};
        const Complex q = random_disk(rng, 0.6);
        int winding = 0;
        try {
            winding = preimage_count(F, ball, q);
        } catch (const NumericalError&) {
            continue;  // q too close to the boundary image; resample
        }
        CHECK(winding == preimage_scan_oracle(F, ball, q));
        ++done;
    }
}

TEST_CASE("ball containment radius") {
    CHECK(ball_containment_radius(power_map(1), DiskPoint(0.4, 0.0), 1.0, 1e-2) ==
          doctest::Approx(1.0).epsilon(1.5e-2));
    const BlaschkeProduct aut({DiskPoint(0.3, 0.3)}, 2.2);
    CHECK(ball_containment_radius(aut, DiskPoint(-0.2, 0.1), 1.0, 1e-2) ==
          doctest::Approx(1.0).epsilon(1.5e-2));
    const double x = square_image_radius(1.0);
    CHECK(ball_containment_radius(power_map(2), kOrigin, 1.0, 1e-2) ==
          doctest::Approx(std::log((1.0 + x) / (1.0 - x))).epsilon(0.03));
    // containment never exceeds the Schwarz bound R
    std::mt19937_64 rng(113);
    for (int it = 0; it < 5; ++it) {
        const BlaschkeProduct F = random_product(rng, 5, 0.8);
        CHECK(ball_containment_radius(F, random_point(rng, 0.7), 1.0, 1e-2) <= 1.0 + 1e-12);
    }
}

TEST_CASE("descent search on the identity map") {
    const BlaschkeProduct id = power_map(1);
    for (int level = 3; level <= 6; ++level) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << level); k += 3) {
            const auto w = descent_search(id, make_square(level, k), 0.5, 8);
            REQUIRE(w.has_value());
            CHECK(w->depth == 1);
            CHECK(std::abs(w->ratio - 0.5) <= 1e-12);
        }
    }
    const auto w6 = descent_search(id, make_square(3, 5), 0.6, 8);
    REQUIRE(w6.has_value());
    CHECK(w6->depth == 1);  // ratio 1/2 <= 0.6 already at depth 1
}

TEST_CASE("descent ratios are exactly 2^-N for the identity") {
    const BlaschkeProduct id = power_map(1);
    for (int depth = 1; depth <= 6; ++depth) {
        const double eps = std::ldexp(1.0, -depth);
        const auto w = descent_search(id, make_square(4, 7), eps * 1.0000001, 8);
        REQUIRE(w.has_value());
        CHECK(w->depth == depth);
        CHECK(std::abs(w->ratio - eps) <= 1e-12 * eps);
    }
}

TEST_CASE("descent search can fail within a depth budget") {
    // nearly constant modulus over the square: no fixed-factor drop in 2 levels
    const BlaschkeProduct far({DiskPoint(-0.99, 0.0)});
    const auto w = descent_search(far, make_square(3, 0), 1e-4, 2);
    CHECK_FALSE(w.has_value());
}

TEST_CASE("descent chain walks toward a boundary point") {
    const BlaschkeProduct id = power_map(1);
    const DescentChain chain = descent_chain(id, DiskPoint(0.9, 0.0), 0.5, 10);
    CHECK(chain.complete);
    CHECK(chain.squares.size() == 11);
    CHECK(chain.squares.front().level == 3);  // 1-|z| = 0.1 lands at side 1/8
    const double angle = std::min(chain.endpoint.angle, kTwoPi - chain.endpoint.angle);
    CHECK(angle <= kTwoPi * std::ldexp(1.0, -12));

    const BlaschkeProduct aut({DiskPoint(0.3, 0.0)});
    std::mt19937_64 rng(127);
    for (int it = 0; it < 10; ++it) {
        const DescentChain c = descent_chain(aut, random_point(rng, 0.9), 0.5, 6);
        CHECK(c.complete);
    }

    const DescentChain trivial = descent_chain(id, DiskPoint(0.9, 0.0), 0.5, 0);
    CHECK(trivial.complete);
    CHECK(trivial.squares.size() == 1);
    CHECK(trivial.endpoint.angle ==
          doctest::Approx(square_geometry(trivial.squares[0]).midpoint.angle));
}

TEST_CASE("quasigeodesic fit") {
    const BlaschkeProduct aut({DiskPoint(0.25, -0.35)}, 0.4);
    const QuasigeodesicFit iso =
        quasigeodesic_fit(aut, DiskPoint(0.1, 0.2), BoundaryPoint(0.7), 8.0, 40);
    CHECK(iso.s == doctest::Approx(1.0));
    CHECK(iso.c <= 1e-9);

    const QuasigeodesicFit radial =
        quasigeodesic_fit(power_map(2), kOrigin, BoundaryPoint(0.0), 10.0, 50);
    CHECK(radial.s >= 0.99);
    CHECK(radial.c <= 3.0);

    // rotation symmetry of the doubling map
    const QuasigeodesicFit rotated =
        quasigeodesic_fit(power_map(2), kOrigin, BoundaryPoint(kPi / 3.0), 10.0, 50);
    CHECK(rotated.s == doctest::Approx(radial.s));
    CHECK(rotated.c == doctest::Approx(radial.c).epsilon(1e-9));
}

TEST_CASE("holder exponent estimates") {
    std::vector<double> ladder;
    for (int k = 4; k <= 24; ++k) ladder.push_back(1.0 - std::ldexp(1.0, -k));

    const HolderEstimate id_est = holder_exponent(power_map(1), BoundaryPoint(1.1), ladder);
    CHECK(std::abs(id_est.s - 1.0) <= 1e-9);

    const HolderEstimate cube = holder_exponent(power_map(3), BoundaryPoint(0.3), ladder);
    CHECK(std::abs(cube.s - 1.0) <= 0.05);

    const BlaschkeProduct near_boundary({DiskPoint(0.9999, 0.0)});
    const HolderEstimate opp = holder_exponent(near_boundary, BoundaryPoint(kPi), ladder);
    CHECK(std::abs(opp.s - 1.0) <= 0.05);
    for (size_t i = 1; i < opp.table.size(); ++i) {
        CHECK(opp.table[i].one_minus_mod < opp.table[i - 1].one_minus_mod);
    }
}

TEST_CASE("hyperbolic area function") {
    // identity map: the integrand is the bare kernel; 1D reduction oracle
    const BlaschkeProduct id = power_map(1);
    const double aperture = 2.0;
    const double r = 0.9;
    const double value = hyperbolic_area_function(id, 0.0, r, aperture);
    auto half_width = [&](double s) {
        if (s == 0.0) return kPi;
        const double g =
            (1.0 + s * s - aperture * aperture * (1.0 - s) * (1.0 - s)) / (2.0 * s);
        return std::acos(std::clamp(g, -1.0, 1.0));
    };
    auto integrand = [&](double s) {
        return 2.0 * half_width(s) * s / ((1.0 - s * s) * (1.0 - s * s));
    };
    double oracle = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double a = r * i / n, b = r * (i + 1) / n;
        oracle += (integrand(a) + 4.0 * integrand(0.5 * (a + b)) + integrand(b)) * (b - a) / 6.0;
    }
    CHECK(value == doctest::Approx(oracle).epsilon(1e-4));

    // z^2: logarithmic growth in r (increments over a geometric ladder level off)
    std::vector<double> increments;
    double prev = hyperbolic_area_function(power_map(2), 0.0, 1.0 - std::ldexp(1.0, -4), 2.0);
    for (int k = 5; k <= 9; ++k) {
        const double cur =
            hyperbolic_area_function(power_map(2), 0.0, 1.0 - std::ldexp(1.0, -k), 2.0);
        increments.push_back(cur - prev);
        prev = cur;
    }
    for (size_t i = 1; i < increments.size(); ++i) {
        CHECK(increments[i] == doctest::Approx(increments[0]).epsilon(0.3));
    }

    // r -> 0 empties the region
    CHECK(hyperbolic_area_function(power_map(2), 0.0, 0.01, 2.0) <= 1e-4);
}

TEST_CASE("gauss curvature residual") {
    // automorphisms solve the equation exactly: residual is pure truncation
    const BlaschkeProduct id = power_map(1);
    const double res = gauss_curvature_residual(id, {0.3, 0.0}, 1e-3);
    const double u = std::log(2.0 / (1.0 - 0.09));
    CHECK(std::abs(res) <= 1e-4 * std::exp(2.0 * u));

    // second-order decay for z^2 away from the critical point
    const double r1 = gauss_curvature_residual(power_map(2), {0.5, 0.0}, 1e-3);
    const double r2 = gauss_curvature_residual(power_map(2), {0.5, 0.0}, 5e-4);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));

    std::mt19937_64 rng(131);
    for (int it = 0; it < 10; ++it) {
        const BlaschkeProduct F = random_product(rng, 5, 0.8);
        if (F.degree() < 2) continue;
        const CriticalSet crit = critical_points(F);
        const Complex z = random_disk(rng, 0.6);
        bool clear = true;
        for (const DiskPoint& c : crit.points) {
            if (detail::dist_h(z, c.value()) <= 0.3) clear = false;
        }
        if (!clear) continue;
        const double a = gauss_curvature_residual(F, z, 1e-3, crit);
        const double b = gauss_curvature_residual(F, z, 5e-4, crit);
        if (std::abs(a) < 1e-7) continue;  // below the observable truncation floor
        CHECK(a / b == doctest::Approx(4.0).epsilon(0.2));
    }

    CHECK_THROWS_AS(gauss_curvature_residual(power_map(2), {0.03, 0.0}, 1e-3),
                    PreconditionError);
    CHECK_THROWS_AS(gauss_curvature_residual(power_map(1), {0.9999999999, 0.0}, 1e-3),
                    PreconditionError);
}

TEST_CASE("distortion profile") {
    const auto id_profile =
        distortion_profile(power_map(1), {0.5, 1.0}, BallGridSpec{32, 64}, 0.99);
    for (const auto& [eps, delta] : id_profile) {
        CHECK(delta == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto sq_profile =
        distortion_profile(power_map(2), {0.5, 1.0}, BallGridSpec{200, 64}, 0.99);
    CHECK(sq_profile[0].second == doctest::Approx(std::tanh(0.5)).epsilon(0.02));
    CHECK(sq_profile[1].second == doctest::Approx(std::tanh(1.0)).epsilon(0.02));
}

TEST_CASE("jensen balance") {
    // automorphism: zero-free derivative, log|F'| harmonic
    const BlaschkeProduct aut({DiskPoint(0.5, 0.0)});
    const JensenBalance jb_aut = jensen_balance(aut, 0.9, 1 << 14);
    CHECK(std::abs(jb_aut.jensen_gap) <= 1e-8);
    CHECK(jb_aut.bound_lhs == 0.0);

    const BlaschkeProduct two({DiskPoint(0.0, 0.0), DiskPoint(0.5, 0.0)});
    const JensenBalance jb_two = jensen_balance(two, 0.9, 1 << 14);
    CHECK(std::abs(jb_two.jensen_gap) <= 1e-6);

    // asymmetric pair with F'(0) != 0: both sides of the counting bound finite
    const BlaschkeProduct pair({DiskPoint(0.1, 0.0), DiskPoint(-0.2, 0.0)});
    const JensenBalance jb_pair = jensen_balance(pair, 0.8, 1 << 14);
    CHECK(std::isfinite(jb_pair.bound_gap));
    CHECK(std::abs(jb_pair.jensen_gap) <= 1e-6);

    // symmetric pair has F'(0) = 0: precondition rejected
    const BlaschkeProduct symmetric({DiskPoint(0.1, 0.0), DiskPoint(-0.1, 0.0)});
    CHECK_THROWS_AS(jensen_balance(symmetric, 0.8, 1 << 14), PreconditionError);
}

TEST_CASE("ball condition report aggregates the sweep") {
    const BlaschkeProduct F({DiskPoint(0.3, 0.0), DiskPoint(-0.1, 0.2)});
    std::vector<DiskPoint> centers = {kOrigin, DiskPoint(0.5, 0.0), DiskPoint(0.0, -0.6)};
    BallSweepSpec spec;
    spec.boundary_samples = 256;
    spec.target_grid = TargetGridSpec{32, 64, 1024};
    const ConditionReport rep = ball_condition_report(F, centers, spec);
    REQUIRE(rep.labels.size() == centers.size());
    CHECK(rep.c1_min_diameter > 0.0);
    CHECK(rep.c4_min_max_derivative > 0.0);
    CHECK(rep.c5_min_containment <= spec.radius + 1e-12);
    // contained ball of radius c5 forces diameter at least 2 c5
    CHECK(rep.c1_min_diameter >= 2.0 * rep.c5_min_containment - 0.1);
    // mean-value bound: max D_h^2 >= (area with multiplicity) / A_h(ball)
    for (size_t i = 0; i < centers.size(); ++i) {
        const double bound = std::sqrt(rep.area_mult[i] / hyperbolic_ball_area(spec.radius));
        CHECK(rep.max_derivative[i] >= bound - 1e-3);
    }
}
