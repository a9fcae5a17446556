#include "surfq/observable.hpp"

#include <cmath>

namespace surfq {

Observable Observable::coordinate(int axis) {
    return Observable(
        "x" + std::to_string(axis + 1),
        [axis](const PhaseSpacePoint& pt) { return pt.x[axis]; },
        [axis](const PhaseSpacePoint&) {
            PhaseGradient g;
            g.dx[axis] = 1.0;
            return g;
        });
}

Observable Observable::momentum(int axis) {
    return Observable(
        "p" + std::to_string(axis + 1),
        [axis](const PhaseSpacePoint& pt) { return pt.p[axis]; },
        [axis](const PhaseSpacePoint&) {
            PhaseGradient g;
            g.dp[axis] = 1.0;
            return g;
        });
}

Observable Observable::hamiltonian(const PhysicalConstants& constants) {
    const double mu = constants.mu;
    return Observable(
        "H",
        [mu](const PhaseSpacePoint& pt) { return pt.p.squaredNorm() / (2.0 * mu); },
        [mu](const PhaseSpacePoint& pt) {
            PhaseGradient g;
            g.dp = pt.p / mu;
            return g;
        });
}

Observable Observable::angular_momentum(int axis) {
    return Observable(
        "G" + std::to_string(axis + 1),
        [axis](const PhaseSpacePoint& pt) { return pt.x.cross(pt.p)[axis]; },
        [axis](const PhaseSpacePoint& pt) {
            // d(x cross p)_i/dx_m = eps_imk p_k ; d/dp_m = eps_ijm x_j
            PhaseGradient g;
            Vec3 e = Vec3::Zero();
            e[axis] = 1.0;
            g.dx = pt.p.cross(e);
            g.dp = e.cross(pt.x);
            return g;
        });
}

Observable Observable::constraint_level(const Surface& surface) {
    const ImplicitSurface impl = surface.implicit;
    return Observable(
        "chi1",
        [impl](const PhaseSpacePoint& pt) { return impl.f(pt.x); },
        [impl](const PhaseSpacePoint& pt) {
            PhaseGradient g;
            g.dx = impl.gradient(pt.x);
            return g;
        });
}

Observable Observable::constraint_normal_momentum(const Surface& surface) {
    const ImplicitSurface impl = surface.implicit;
    return Observable(
        "chi2",
        [impl](const PhaseSpacePoint& pt) {
            return normal(impl, pt.x).dot(pt.p);
        },
        [impl](const PhaseSpacePoint& pt) {
            const CurvatureSample s = curvature_at(impl, pt.x);
            PhaseGradient g;
            g.dx = s.dn.transpose() * pt.p;  // d(n_i p_i)/dx_j = n_{i,j} p_i
            g.dp = s.n;
            return g;
        });
}

Observable operator+(const Observable& a, const Observable& b) {
    return Observable(
        "(" + a.name() + "+" + b.name() + ")",
        [a, b](const PhaseSpacePoint& pt) { return a.value(pt) + b.value(pt); },
        [a, b](const PhaseSpacePoint& pt) {
            PhaseGradient ga = a.gradient(pt), gb = b.gradient(pt);
            ga.dx += gb.dx;
            ga.dp += gb.dp;
            return ga;
        });
}

Observable operator-(const Observable& a, const Observable& b) {
    return Observable(
        "(" + a.name() + "-" + b.name() + ")",
        [a, b](const PhaseSpacePoint& pt) { return a.value(pt) - b.value(pt); },
        [a, b](const PhaseSpacePoint& pt) {
            PhaseGradient ga = a.gradient(pt), gb = b.gradient(pt);
            ga.dx -= gb.dx;
            ga.dp -= gb.dp;
            return ga;
        });
}

Observable operator*(const Observable& a, const Observable& b) {
    return Observable(
        "(" + a.name() + "*" + b.name() + ")",
        [a, b](const PhaseSpacePoint& pt) { return a.value(pt) * b.value(pt); },
        [a, b](const PhaseSpacePoint& pt) {
            const double va = a.value(pt), vb = b.value(pt);
            PhaseGradient ga = a.gradient(pt), gb = b.gradient(pt);
            PhaseGradient g;
            g.dx = ga.dx * vb + gb.dx * va;
            g.dp = ga.dp * vb + gb.dp * va;
            return g;
        });
}

Observable operator*(double s, const Observable& a) {
    return Observable(
        std::to_string(s) + "*" + a.name(),
        [s, a](const PhaseSpacePoint& pt) { return s * a.value(pt); },
        [s, a](const PhaseSpacePoint& pt) {
            PhaseGradient g = a.gradient(pt);
            g.dx *= s;
            g.dp *= s;
            return g;
        });
}

Observable sin(const Observable& a) {
    return Observable(
        "sin(" + a.name() + ")",
        [a](const PhaseSpacePoint& pt) { return std::sin(a.value(pt)); },
        [a](const PhaseSpacePoint& pt) {
            const double c = std::cos(a.value(pt));
            PhaseGradient g = a.gradient(pt);
            g.dx *= c;
            g.dp *= c;
            return g;
        });
}

}  // namespace surfq
