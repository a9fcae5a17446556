#pragma once

#include "surfq/chart.hpp"
#include "surfq/jet.hpp"
#include "surfq/types.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace surfq {

/// Level-set description f(x) = 0 with exact first and second derivatives.
/// Built-ins carry analytic closures; from_jet() builds the derivative pair
/// by forward-mode automatic differentiation of a user-supplied function.
class ImplicitSurface {
public:
    using LevelFn = std::function<double(const Vec3&)>;
    using GradFn = std::function<Vec3(const Vec3&)>;
    using HessFn = std::function<Mat3(const Vec3&)>;
    using JetFn = std::function<Jet3(const std::array<Jet3, 3>&)>;

    ImplicitSurface() = default;
    ImplicitSurface(std::string name, LevelFn f, GradFn grad, HessFn hess, double scale = 1.0)
        : name_(std::move(name)), f_(std::move(f)), grad_(std::move(grad)),
          hess_(std::move(hess)), scale_(scale) {}

    static ImplicitSurface from_jet(std::string name, const JetFn& fn, double scale = 1.0);

    double f(const Vec3& x) const { return f_(x); }
    Vec3 gradient(const Vec3& x) const { return grad_(x); }
    Mat3 hessian(const Vec3& x) const { return hess_(x); }
    const std::string& name() const { return name_; }
    double scale() const { return scale_; }

    /// Same zero set, opposite orientation (f -> -f).
    ImplicitSurface flipped() const;

private:
    std::string name_;
    LevelFn f_;
    GradFn grad_;
    HessFn hess_;
    double scale_ = 1.0;
};

/// All pointwise geometry at x: unit normal n, normal Jacobian n_{i,j},
/// tangent projector, shape operator S = -P (grad n) P, principal curvatures,
/// M = tr S, K = (tr(S)^2 - tr(S^2))/2 and the geometric potential
/// V_G = -(hbar^2/2mu) ((M/2)^2 - K).
struct CurvatureSample {
    Vec3 x = Vec3::Zero();
    Vec3 n = Vec3::Zero();
    Mat3 dn = Mat3::Zero();      // n_{i,j} = d n_i / d x_j
    Mat3 projector = Mat3::Zero();
    Mat3 shape = Mat3::Zero();
    double kappa1 = 0.0;         // kappa1 <= kappa2
    double kappa2 = 0.0;
    double mean_sum = 0.0;       // M = kappa1 + kappa2
    double gauss = 0.0;          // K = kappa1 * kappa2
    double v_g = 0.0;
};

/// n = grad f / |grad f|. Throws DegenerateGradient when |grad f| < 1e-8.
Vec3 normal(const ImplicitSurface& surface, const Vec3& x);

CurvatureSample curvature_at(const ImplicitSurface& surface, const Vec3& x,
                             const PhysicalConstants& constants = {});

/// One Newton step along grad f; enough to polish chart-sampled points to
/// |f| <= 1e-10 * scale.
Vec3 project_to_surface(const ImplicitSurface& surface, const Vec3& x);

/// An implicit description paired with the chart used for sampling and
/// discretization. Copies are cheap (shared closures).
struct Surface {
    std::string id;
    ImplicitSurface implicit;
    ParametricChart chart;
    std::vector<std::pair<std::string, double>> params;

    Surface flipped() const {
        Surface s = *this;
        s.implicit = implicit.flipped();
        return s;
    }
};

/// Built-in set spans K > 0, K = 0, K of both signs and a V_G == 0 control.
/// Sphere, cylinder and torus use signed-distance level functions.
Surface make_sphere(double radius);
Surface make_cylinder(double radius, double period = 6.283185307179586476925286766559);
Surface make_torus(double major, double minor);
Surface make_ellipsoid(double a, double b, double c);
Surface make_plane();

/// Lookup by id with named parameters; throws ConfigError for unknown ids or
/// invalid parameters (e.g. torus with r >= R).
Surface make_surface(const std::string& id, const std::vector<std::pair<std::string, double>>& params);

/// Deterministic on-surface sampler: uniform chart draws followed by one
/// Newton projection. Identical seeds give bitwise-identical points.
std::vector<Vec3> sample_surface_points(const Surface& surface, int count, std::uint64_t seed);

}  // namespace surfq
