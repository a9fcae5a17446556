#pragma once

#include "surfq/surface.hpp"
#include "surfq/types.hpp"

#include <functional>
#include <string>

namespace surfq {

/// Point of the 6D phase space. On the constraint manifold both f(x) and
/// n.p vanish (the second-class pair).
struct PhaseSpacePoint {
    Vec3 x = Vec3::Zero();
    Vec3 p = Vec3::Zero();
};

/// Exact phase-space gradient of a scalar observable.
struct PhaseGradient {
    Vec3 dx = Vec3::Zero();
    Vec3 dp = Vec3::Zero();
};

/// Differentiable scalar on phase space with exact first derivatives
/// (analytic closures; bracket residual targets of 1e-9 rule out finite
/// differences). Combinators build derived observables by sum/product/chain
/// rule, which keeps derivatives exact under composition.
class Observable {
public:
    using ValueFn = std::function<double(const PhaseSpacePoint&)>;
    using GradFn = std::function<PhaseGradient(const PhaseSpacePoint&)>;

    Observable() = default;
    Observable(std::string name, ValueFn value, GradFn grad)
        : name_(std::move(name)), value_(std::move(value)), grad_(std::move(grad)) {}

    double value(const PhaseSpacePoint& pt) const { return value_(pt); }
    PhaseGradient gradient(const PhaseSpacePoint& pt) const { return grad_(pt); }
    const std::string& name() const { return name_; }

    static Observable coordinate(int axis);
    static Observable momentum(int axis);
    static Observable hamiltonian(const PhysicalConstants& constants = {});
    /// G_i = (x cross p)_i, built from the same momenta as the brackets.
    static Observable angular_momentum(int axis);
    /// chi_1 = f(x).
    static Observable constraint_level(const Surface& surface);
    /// chi_2 = n(x) . p; derivatives use the surface Hessian through n_{i,j}.
    static Observable constraint_normal_momentum(const Surface& surface);

private:
    std::string name_;
    ValueFn value_;
    GradFn grad_;
};

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double s, const Observable& a);
Observable sin(const Observable& a);

}  // namespace surfq
