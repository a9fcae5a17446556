#include "doctest.h"

#include "surfq/brackets.hpp"

#include <cmath>

using namespace surfq;

namespace {

PhaseSpacePoint pt_at(const Vec3& x, const Vec3& p) {
    PhaseSpacePoint pt;
    pt.x = x;
    pt.p = p;
    return pt;
}

}  // namespace

TEST_CASE("poisson: canonical pairs") {
    const PhaseSpacePoint pt = pt_at(Vec3(0.2, -1.0, 0.5), Vec3(1.0, 2.0, -0.3));
    CHECK(poisson(Observable::coordinate(0), Observable::momentum(0), pt) == doctest::Approx(1.0));
    CHECK(poisson(Observable::coordinate(0), Observable::momentum(1), pt) == doctest::Approx(0.0));
    CHECK(poisson(Observable::momentum(2), Observable::coordinate(2), pt) == doctest::Approx(-1.0));
}

TEST_CASE("poisson: so(3) algebra of angular momenta, [L1,L2] = L3") {
    const PhaseSpacePoint pt = pt_at(Vec3(1, 2, 3), Vec3(-1, 0, 2));
    const double l3 = pt.x[0] * pt.p[1] - pt.x[1] * pt.p[0];  // = 2
    CHECK(l3 == doctest::Approx(2.0));
    CHECK(poisson(Observable::angular_momentum(0), Observable::angular_momentum(1), pt) ==
          doctest::Approx(l3).epsilon(1e-14));
}

TEST_CASE("observable gradients match finite differences") {
    const Surface torus = make_torus(2.0, 0.5);
    const PhaseSpacePoint pt = sample_phase_points(torus, 1, 3)[0];
    const Observable obs[] = {Observable::coordinate(1), Observable::momentum(2),
                              Observable::hamiltonian(), Observable::angular_momentum(0),
                              Observable::constraint_level(torus),
                              Observable::constraint_normal_momentum(torus),
                              sin(Observable::coordinate(0)) * Observable::momentum(1)};
    const double h = 1e-6;
    for (const Observable& o : obs) {
        CAPTURE(o.name());
        const PhaseGradient g = o.gradient(pt);
        for (int i = 0; i < 3; ++i) {
            PhaseSpacePoint plus = pt, minus = pt;
            plus.x[i] += h;
            minus.x[i] -= h;
            CHECK(g.dx[i] ==
                  doctest::Approx((o.value(plus) - o.value(minus)) / (2 * h)).epsilon(1e-6));
            plus = pt;
            minus = pt;
            plus.p[i] += h;
            minus.p[i] -= h;
            CHECK(g.dp[i] ==
                  doctest::Approx((o.value(plus) - o.value(minus)) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("dirac: elementary brackets on the sphere north pole") {
    const Surface sphere = make_sphere(1.0);
    const PhaseSpacePoint pt = pt_at(Vec3(0, 0, 1), Vec3(1, 0, 0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(dirac(Observable::coordinate(i), Observable::coordinate(j), pt,
                                 sphere)) <= 1e-14);
            const double expected = (i == j ? 1.0 : 0.0) - (i == 2 && j == 2 ? 1.0 : 0.0);
            CHECK(dirac(Observable::coordinate(i), Observable::momentum(j), pt, sphere) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("dirac: momentum bracket matches the hand-coded right-hand side on a torus point") {
    const Surface torus = make_torus(2.0, 0.5);
    const PhaseSpacePoint pt = sample_phase_points(torus, 1, 12)[0];
    const CurvatureSample s = curvature_at(torus.implicit, pt.x);
    const double lhs = dirac(Observable::momentum(0), Observable::momentum(1), pt, torus);
    const double rhs = s.n[1] * s.dn.row(0).dot(pt.p) - s.n[0] * s.dn.row(1).dot(pt.p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("dirac: off-manifold points are rejected, not projected") {
    const Surface sphere = make_sphere(1.0);
    CHECK_THROWS_AS(dirac(Observable::coordinate(0), Observable::momentum(0),
                          pt_at(Vec3(0, 0, 1.001), Vec3(1, 0, 0)), sphere),
                    OffManifold);
    CHECK_THROWS_AS(dirac(Observable::coordinate(0), Observable::momentum(0),
                          pt_at(Vec3(0, 0, 1), Vec3(1, 0, 0.001)), sphere),
                    OffManifold);
}

TEST_CASE("constraint matrix: [[0,1],[-1,0]] on the signed-distance sphere") {
    const Surface sphere = make_sphere(1.0);
    for (const PhaseSpacePoint& pt : sample_phase_points(sphere, 50, 4)) {
        const ConstraintMatrix c = constraint_matrix(sphere, pt);
        CHECK(std::abs(c.c12 - 1.0) <= 1e-12);
        Mat2 expected;
        expected << 0, 1, -1, 0;
        CHECK((c.matrix() - expected).norm() <= 1e-12);
        CHECK((c.matrix() * c.inverse() - Mat2::Identity()).norm() <= 1e-12);
    }
}

TEST_CASE("dirac bracket annihilates both constraints") {
    for (const Surface& surface : {make_sphere(1.0), make_cylinder(1.0), make_torus(2.0, 0.5),
                                   make_ellipsoid(2.0, 1.0, 1.0)}) {
        CAPTURE(surface.id);
        const Observable chi1 = Observable::constraint_level(surface);
        const Observable chi2 = Observable::constraint_normal_momentum(surface);
        const Observable probes[] = {Observable::coordinate(0), Observable::momentum(1),
                                     Observable::hamiltonian(), Observable::angular_momentum(2)};
        for (const PhaseSpacePoint& pt : sample_phase_points(surface, 25, 9)) {
            for (const Observable& a : probes) {
                CHECK(std::abs(dirac(a, chi1, pt, surface)) <= 1e-10);
                CHECK(std::abs(dirac(a, chi2, pt, surface)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("geodesic invariants: sphere, plane, cylinder helix oracle") {
    const Surface sphere = make_sphere(1.0);
    for (const PhaseSpacePoint& pt : sample_phase_points(sphere, 20, 6)) {
        const GeodesicInvariants gi = geodesic_invariants(sphere, pt);
        CHECK(gi.curvature == doctest::Approx(-1.0).epsilon(1e-10));  // S = -P on the unit sphere
        CHECK(std::abs(gi.torsion) <= 1e-10);
    }

    const Surface plane = make_plane();
    for (const PhaseSpacePoint& pt : sample_phase_points(plane, 10, 6)) {
        const GeodesicInvariants gi = geodesic_invariants(plane, pt);
        CHECK(std::abs(gi.curvature) <= 1e-14);
        CHECK(std::abs(gi.torsion) <= 1e-14);
    }

    // 45-degree tangent on the unit cylinder: the geodesic is the helix
    // (cos t, sin t, t)/sqrt2 with Frenet curvature and torsion both 1/2
    const Surface cyl = make_cylinder(1.0);
    const Vec3 x(1, 0, 0);
    const Vec3 p = Vec3(0, 1, 1).normalized();
    const GeodesicInvariants gi = geodesic_invariants(cyl, pt_at(x, p));
    CHECK(std::abs(gi.curvature) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(gi.torsion) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(geodesic_invariants(cyl, pt_at(x, Vec3::Zero())), ZeroMomentum);
}

TEST_CASE("eq6 sign calibration is unambiguous and matches the frozen record") {
    const Eq6SignConvention computed = calibrate_eq6_signs();
    CHECK(computed.kappa_sign == kEq6Signs.kappa_sign);
    CHECK(computed.tau_sign == kEq6Signs.tau_sign);
    CHECK(kEq6Signs.kappa_sign == -1.0);
    CHECK(kEq6Signs.tau_sign == +1.0);
}

TEST_CASE("angular momentum bracket: sphere reduces to so(3)") {
    const Surface sphere = make_sphere(1.0);
    for (const PhaseSpacePoint& pt : sample_phase_points(sphere, 50, 8)) {
        CHECK(angular_momentum_so3_check(sphere, pt).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("angular momentum bracket: full identity on torus and ellipsoid") {
    for (const Surface& surface : {make_torus(2.0, 0.5), make_ellipsoid(2.0, 1.0, 1.0)}) {
        CAPTURE(surface.id);
        for (const PhaseSpacePoint& pt : sample_phase_points(surface, 100, 13)) {
            CHECK(angular_momentum_bracket_check(surface, pt).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("equations of motion: closed forms and tangency of dG/dt") {
    const Surface sphere = make_sphere(1.0);
    const PhaseSpacePoint pt0 = sample_phase_points(sphere, 1, 21)[0];
    const MotionDerivatives d0 = equations_of_motion(sphere, pt0);
    // centripetal: p.grad(n).p = |p|^2 on the unit sphere
    const Vec3 n0 = normal(sphere.implicit, pt0.x);
    CHECK((d0.pdot + n0 * pt0.p.squaredNorm()).cwiseAbs().maxCoeff() <= 1e-10);

    for (const Surface& surface : {make_sphere(1.0), make_torus(2.0, 0.5)}) {
        for (const PhaseSpacePoint& pt : sample_phase_points(surface, 50, 17)) {
            const MotionDerivatives d = equations_of_motion(surface, pt);
            const CurvatureSample s = curvature_at(surface.implicit, pt.x);
            const double pdnp = pt.p.dot(s.dn * pt.p);
            CHECK((d.xdot - pt.p).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK((d.pdot + s.n * pdnp).cwiseAbs().maxCoeff() <= 1e-10);
            const Vec3 t = -pt.x.cross(s.n) * pdnp;
            CHECK((d.gdot - t).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(std::abs(s.n.dot(d.gdot)) <= 1e-10);
        }
    }
}

TEST_CASE("bracket properties: antisymmetry, bilinearity, Leibniz over an expression pool") {
    const Surface torus = make_torus(2.0, 0.5);
    const auto pts = sample_phase_points(torus, 10, 31);
    // small deterministic pool of smooth observables
    std::vector<Observable> pool = {Observable::coordinate(0),
                                    Observable::coordinate(2),
                                    Observable::momentum(1),
                                    Observable::hamiltonian(),
                                    Observable::angular_momentum(1),
                                    sin(Observable::coordinate(1)),
                                    Observable::coordinate(0) * Observable::momentum(0),
                                    2.5 * Observable::momentum(2) + Observable::coordinate(1)};
    for (std::size_t ia = 0; ia < pool.size(); ++ia) {
        for (std::size_t ib = ia; ib < pool.size(); ++ib) {
            const Observable& a = pool[ia];
            const Observable& b = pool[ib];
            for (const PhaseSpacePoint& pt : pts) {
                CHECK(std::abs(poisson(a, b, pt) + poisson(b, a, pt)) <= 1e-12);
                CHECK(std::abs(dirac(a, b, pt, torus) + dirac(b, a, pt, torus)) <= 1e-12);
                // bilinearity in the first slot
                const Observable lin = 2.0 * a + b;
                const double pab = poisson(a, b, pt);
                CHECK(std::abs(poisson(lin, b, pt) - 2.0 * pab) <=
                      1e-10 * (1.0 + std::abs(pab)));
                const double dab = dirac(a, b, pt, torus);
                CHECK(std::abs(dirac(lin, b, pt, torus) - 2.0 * dab) <=
                      1e-10 * (1.0 + std::abs(dab)));
            }
        }
    }
    // Leibniz: [fg, h]_D = f [g,h]_D + [f,h]_D g
    const Observable f = pool[0], g = pool[2], h = pool[4];
    for (const PhaseSpacePoint& pt : pts) {
        const double lhs = dirac(f * g, h, pt, torus);
        const double rhs =
            f.value(pt) * dirac(g, h, pt, torus) + dirac(f, h, pt, torus) * g.value(pt);
        CHECK(std::abs(lhs - rhs) <= 1e-8);
    }
}

TEST_CASE("phase sampler: tangency, determinism") {
    const Surface sphere = make_sphere(1.0);
    const auto pts = sample_phase_points(sphere, 3, 1);
    for (const PhaseSpacePoint& pt : pts) {
        const Vec3 n = normal(sphere.implicit, pt.x);
        CHECK(std::abs(n.dot(pt.p)) <= 1e-14 * std::max(1.0, pt.p.norm()));
    }
    const Surface torus = make_torus(2.0, 0.5);
    const auto a = sample_phase_points(torus, 1000, 5);
    const auto b = sample_phase_points(torus, 1000, 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i].x.array() == b[i].x.array()).all());
        CHECK((a[i].p.array() == b[i].p.array()).all());
        CHECK(std::abs(torus.implicit.f(a[i].x)) <= 1e-10);
    }
}

TEST_CASE("classical identity sweep passes on every surface at 1e-8") {
    for (const Surface& surface : {make_sphere(1.0), make_cylinder(1.0), make_torus(2.0, 0.5),
                                   make_ellipsoid(2.0, 1.0, 1.0)}) {
        CAPTURE(surface.id);
        const auto reports = verify_classical_identities(surface, 200, 2, 1e-8);
        for (const auto& r : reports) {
            CAPTURE(r.id);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("classical identity sweep is thread-invariant") {
    const Surface torus = make_torus(2.0, 0.5);
    const auto seq = verify_classical_identities(torus, 128, 10, 1e-8, 1);
    const auto par = verify_classical_identities(torus, 128, 10, 1e-8, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].max_residual == par[i].max_residual);
    }
}
