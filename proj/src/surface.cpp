#include "surfq/surface.hpp"

#include "surfq/rng.hpp"

#include <cmath>

namespace surfq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kGradientFloor = 1e-8;

}  // namespace

ImplicitSurface ImplicitSurface::from_jet(std::string name, const JetFn& fn, double scale) {
    auto seed = [](const Vec3& x) {
        return std::array<Jet3, 3>{Jet3::variable(x[0], 0), Jet3::variable(x[1], 1),
                                   Jet3::variable(x[2], 2)};
    };
    return ImplicitSurface(
        std::move(name),
        [fn, seed](const Vec3& x) { return fn(seed(x)).v; },
        [fn, seed](const Vec3& x) { return fn(seed(x)).g; },
        [fn, seed](const Vec3& x) { return fn(seed(x)).h; }, scale);
}

ImplicitSurface ImplicitSurface::flipped() const {
    LevelFn f = f_;
    GradFn g = grad_;
    HessFn h = hess_;
    return ImplicitSurface(name_ + "-flipped",
                           [f](const Vec3& x) { return -f(x); },
                           [g](const Vec3& x) { return Vec3(-g(x)); },
                           [h](const Vec3& x) { return Mat3(-h(x)); }, scale_);
}

Vec3 normal(const ImplicitSurface& surface, const Vec3& x) {
    const Vec3 g = surface.gradient(x);
    const double gn = g.norm();
    if (!(gn >= kGradientFloor)) {
        throw DegenerateGradient("surface '" + surface.name() + "': |grad f| = " +
                                 std::to_string(gn) + " below threshold");
    }
    return g / gn;
}

CurvatureSample curvature_at(const ImplicitSurface& surface, const Vec3& x,
                             const PhysicalConstants& constants) {
    const Vec3 g = surface.gradient(x);
    const double gn = g.norm();
    if (!(gn >= kGradientFloor)) {
        throw DegenerateGradient("surface '" + surface.name() + "': |grad f| = " +
                                 std::to_string(gn) + " below threshold");
    }
    CurvatureSample s;
    s.x = x;
    s.n = g / gn;
    s.projector = Mat3::Identity() - s.n * s.n.transpose();
    // n = grad f/|grad f| differentiates to n_{i,j} = (P H)_{ij} / |grad f|.
    const Mat3 hess = surface.hessian(x);
    s.dn = s.projector * hess / gn;
    s.shape = -s.projector * s.dn * s.projector;
    s.mean_sum = s.shape.trace();
    const double tr2 = (s.shape * s.shape).trace();
    s.gauss = 0.5 * (s.mean_sum * s.mean_sum - tr2);
    const double half_m = 0.5 * s.mean_sum;
    // (M/2)^2 - K = ((k1-k2)/2)^2 >= 0 analytically; snap rounding-level
    // residue to zero so umbilic surfaces report V_G = 0 exactly
    double disc = half_m * half_m - s.gauss;
    if (disc <= 1e-14 * (half_m * half_m + std::abs(s.gauss))) disc = 0.0;
    const double split = std::sqrt(disc);
    s.kappa1 = half_m - split;
    s.kappa2 = half_m + split;
    s.v_g = -(constants.hbar * constants.hbar / (2.0 * constants.mu)) * disc;
    return s;
}

Vec3 project_to_surface(const ImplicitSurface& surface, const Vec3& x) {
    const Vec3 g = surface.gradient(x);
    const double g2 = g.squaredNorm();
    if (!(g2 >= kGradientFloor * kGradientFloor)) {
        throw DegenerateGradient("projection from a degenerate-gradient point");
    }
    return x - (surface.f(x) / g2) * g;
}

Surface make_sphere(double radius) {
    if (!(radius > 0.0)) throw ConfigError("sphere: radius must be positive");
    const double R = radius;
    ImplicitSurface impl(
        "sphere",
        [R](const Vec3& x) { return x.norm() - R; },
        [](const Vec3& x) { return Vec3(x / x.norm()); },
        [](const Vec3& x) {
            const double r = x.norm();
            const Vec3 n = x / r;
            return Mat3((Mat3::Identity() - n * n.transpose()) / r);
        },
        R);
    ParametricChart chart(
        "sphere-polar",
        [R](double u, double v) {
            return Vec3(R * std::sin(u) * std::cos(v), R * std::sin(u) * std::sin(v),
                        R * std::cos(u));
        },
        [R](double u, double v) {
            return Vec3(R * std::cos(u) * std::cos(v), R * std::cos(u) * std::sin(v),
                        -R * std::sin(u));
        },
        [R](double u, double v) {
            return Vec3(-R * std::sin(u) * std::sin(v), R * std::sin(u) * std::cos(v), 0.0);
        },
        0.0, kPi, 0.0, kTwoPi, false, true, true);
    return Surface{"sphere", std::move(impl), std::move(chart), {{"radius", R}}};
}

Surface make_cylinder(double radius, double period) {
    if (!(radius > 0.0)) throw ConfigError("cylinder: radius must be positive");
    if (!(period > 0.0)) throw ConfigError("cylinder: period must be positive");
    const double R = radius;
    ImplicitSurface impl(
        "cylinder",
        [R](const Vec3& x) { return std::hypot(x[0], x[1]) - R; },
        [](const Vec3& x) {
            const double rho = std::hypot(x[0], x[1]);
            return Vec3(x[0] / rho, x[1] / rho, 0.0);
        },
        [](const Vec3& x) {
            const double rho = std::hypot(x[0], x[1]);
            const double r3 = rho * rho * rho;
            Mat3 h = Mat3::Zero();
            h(0, 0) = 1.0 / rho - x[0] * x[0] / r3;
            h(1, 1) = 1.0 / rho - x[1] * x[1] / r3;
            h(0, 1) = h(1, 0) = -x[0] * x[1] / r3;
            return h;
        },
        R);
    // u circumferential, v axial; both periodic (axial period supplied).
    ParametricChart chart(
        "cylinder",
        [R](double u, double v) { return Vec3(R * std::cos(u), R * std::sin(u), v); },
        [R](double u, double) { return Vec3(-R * std::sin(u), R * std::cos(u), 0.0); },
        [](double, double) { return Vec3(0.0, 0.0, 1.0); },
        0.0, kTwoPi, 0.0, period, true, true, false,
        /*unwrap_u=*/false, /*unwrap_v=*/true);
    return Surface{"cylinder", std::move(impl), std::move(chart),
                   {{"radius", R}, {"period", period}}};
}

Surface make_torus(double major, double minor) {
    if (!(minor > 0.0) || !(major > minor)) {
        throw ConfigError("torus: requires R > r > 0");
    }
    const double R = major, r = minor;
    ImplicitSurface impl(
        "torus",
        [R, r](const Vec3& x) {
            const double rho = std::hypot(x[0], x[1]);
            return std::hypot(rho - R, x[2]) - r;
        },
        [R](const Vec3& x) {
            const double rho = std::hypot(x[0], x[1]);
            const double q = rho - R;
            const double s = std::hypot(q, x[2]);
            const double u = q / s;
            return Vec3(u * x[0] / rho, u * x[1] / rho, x[2] / s);
        },
        [R](const Vec3& x) {
            const double rho = std::hypot(x[0], x[1]);
            const double q = rho - R;
            const double s = std::hypot(q, x[2]);
            const double u = q / s;
            const double z = x[2];
            const double s3 = s * s * s;
            const double rho2 = rho * rho, rho3 = rho2 * rho;
            Mat3 h = Mat3::Zero();
            h(0, 0) = x[0] * x[0] * z * z / (rho2 * s3) + u * (rho2 - x[0] * x[0]) / rho3;
            h(1, 1) = x[1] * x[1] * z * z / (rho2 * s3) + u * (rho2 - x[1] * x[1]) / rho3;
            h(0, 1) = h(1, 0) = x[0] * x[1] * z * z / (rho2 * s3) - u * x[0] * x[1] / rho3;
            h(0, 2) = h(2, 0) = -x[0] * q * z / (rho * s3);
            h(1, 2) = h(2, 1) = -x[1] * q * z / (rho * s3);
            h(2, 2) = q * q / s3;
            return h;
        },
        R + r);
    // u toroidal, v poloidal (v = 0 on the outer equator), so the Gaussian
    // curvature reads K = cos v / (r (R + r cos v)).
    ParametricChart chart(
        "torus",
        [R, r](double u, double v) {
            const double w = R + r * std::cos(v);
            return Vec3(w * std::cos(u), w * std::sin(u), r * std::sin(v));
        },
        [R, r](double u, double v) {
            const double w = R + r * std::cos(v);
            return Vec3(-w * std::sin(u), w * std::cos(u), 0.0);
        },
        [r](double u, double v) {
            return Vec3(-r * std::sin(v) * std::cos(u), -r * std::sin(v) * std::sin(u),
                        r * std::cos(v));
        },
        0.0, kTwoPi, 0.0, kTwoPi, true, true, false);
    return Surface{"torus", std::move(impl), std::move(chart), {{"R", R}, {"r", r}}};
}

Surface make_ellipsoid(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
        throw ConfigError("ellipsoid: semi-axes must be positive");
    }
    ImplicitSurface impl(
        "ellipsoid",
        [a, b, c](const Vec3& x) {
            return x[0] * x[0] / (a * a) + x[1] * x[1] / (b * b) + x[2] * x[2] / (c * c) - 1.0;
        },
        [a, b, c](const Vec3& x) {
            return Vec3(2.0 * x[0] / (a * a), 2.0 * x[1] / (b * b), 2.0 * x[2] / (c * c));
        },
        [a, b, c](const Vec3&) {
            return Mat3(Vec3(2.0 / (a * a), 2.0 / (b * b), 2.0 / (c * c)).asDiagonal());
        },
        std::max(a, std::max(b, c)));
    ParametricChart chart(
        "ellipsoid-polar",
        [a, b, c](double u, double v) {
            return Vec3(a * std::sin(u) * std::cos(v), b * std::sin(u) * std::sin(v),
                        c * std::cos(u));
        },
        [a, b, c](double u, double v) {
            return Vec3(a * std::cos(u) * std::cos(v), b * std::cos(u) * std::sin(v),
                        -c * std::sin(u));
        },
        [a, b](double u, double v) {
            return Vec3(-a * std::sin(u) * std::sin(v), b * std::sin(u) * std::cos(v), 0.0);
        },
        0.0, kPi, 0.0, kTwoPi, false, true, true);
    return Surface{"ellipsoid", std::move(impl), std::move(chart),
                   {{"a", a}, {"b", b}, {"c", c}}};
}

Surface make_plane() {
    ImplicitSurface impl(
        "plane",
        [](const Vec3& x) { return x[2]; },
        [](const Vec3&) { return Vec3(0.0, 0.0, 1.0); },
        [](const Vec3&) { return Mat3(Mat3::Zero()); },
        1.0);
    ParametricChart chart(
        "flat-periodic",
        [](double u, double v) { return Vec3(u, v, 0.0); },
        [](double, double) { return Vec3(1.0, 0.0, 0.0); },
        [](double, double) { return Vec3(0.0, 1.0, 0.0); },
        0.0, kTwoPi, 0.0, kTwoPi, true, true, false,
        /*unwrap_u=*/true, /*unwrap_v=*/true);
    return Surface{"plane", std::move(impl), std::move(chart), {}};
}

Surface make_surface(const std::string& id,
                     const std::vector<std::pair<std::string, double>>& params) {
    auto get = [&params](const std::string& key, double fallback) {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return fallback;
    };
    if (id == "sphere") return make_sphere(get("radius", 1.0));
    if (id == "cylinder") return make_cylinder(get("radius", 1.0), get("period", kTwoPi));
    if (id == "torus") return make_torus(get("R", 2.0), get("r", 0.5));
    if (id == "ellipsoid") return make_ellipsoid(get("a", 2.0), get("b", 1.0), get("c", 1.0));
    if (id == "plane") return make_plane();
    throw ConfigError("unknown surface id '" + id + "'");
}

std::vector<Vec3> sample_surface_points(const Surface& surface, int count, std::uint64_t seed) {
    if (count < 1) throw ConfigError("sample_surface_points: count must be >= 1");
    Rng rng(seed);
    const auto& ch = surface.chart;
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double u, v;
        if (ch.pole_offset_u()) {
            // keep a small margin off the coordinate singularity
            const double pad = 1e-3 * ch.len_u();
            u = rng.uniform(ch.u0() + pad, ch.u1() - pad);
        } else {
            u = rng.uniform(ch.u0(), ch.u1());
        }
        v = rng.uniform(ch.v0(), ch.v1());
        out.push_back(project_to_surface(surface.implicit, ch.position(u, v)));
    }
    return out;
}

}  // namespace surfq
