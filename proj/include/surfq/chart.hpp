#pragma once

#include "surfq/types.hpp"

#include <functional>
#include <string>

namespace surfq {

/// First fundamental form at a chart point.
struct ChartMetric {
    Mat2 g;           // [[E,F],[F,G]]
    Mat2 g_inv;
    double det = 0.0;
    double sqrt_det = 0.0;
};

/// Rectangular parameter domain with per-direction periodicity. Pole-offset
/// charts (sphere, ellipsoid) are non-periodic in u with coordinate
/// singularities at both u-ends; grid nodes are kept off the poles and the
/// u-line continues through a pole to the antipodal longitude.
class ParametricChart {
public:
    using MapFn = std::function<Vec3(double, double)>;

    ParametricChart() = default;
    ParametricChart(std::string name, MapFn pos, MapFn du, MapFn dv,
                    double u0, double u1, double v0, double v1,
                    bool periodic_u, bool periodic_v, bool pole_offset_u,
                    bool unwrap_u = false, bool unwrap_v = false)
        : name_(std::move(name)), pos_(std::move(pos)), du_(std::move(du)), dv_(std::move(dv)),
          u0_(u0), u1_(u1), v0_(v0), v1_(v1),
          periodic_u_(periodic_u), periodic_v_(periodic_v), pole_offset_u_(pole_offset_u),
          unwrap_u_(unwrap_u), unwrap_v_(unwrap_v) {}

    const std::string& name() const { return name_; }
    Vec3 position(double u, double v) const { return pos_(u, v); }
    Vec3 d_u(double u, double v) const { return du_(u, v); }
    Vec3 d_v(double u, double v) const { return dv_(u, v); }

    double u0() const { return u0_; }
    double u1() const { return u1_; }
    double v0() const { return v0_; }
    double v1() const { return v1_; }
    double len_u() const { return u1_ - u0_; }
    double len_v() const { return v1_ - v0_; }
    bool periodic_u() const { return periodic_u_; }
    bool periodic_v() const { return periodic_v_; }
    bool pole_offset_u() const { return pole_offset_u_; }

    /// True when the chart coordinate is periodic but the embedding is not
    /// (flat chart u,v; cylinder axial v). Coordinate functions of such
    /// directions are multivalued across the wrap seam and commutators with
    /// them must difference along the short path.
    bool unwrap_u() const { return unwrap_u_; }
    bool unwrap_v() const { return unwrap_v_; }

private:
    std::string name_;
    MapFn pos_, du_, dv_;
    double u0_ = 0.0, u1_ = 1.0, v0_ = 0.0, v1_ = 1.0;
    bool periodic_u_ = false, periodic_v_ = false, pole_offset_u_ = false;
    bool unwrap_u_ = false, unwrap_v_ = false;
};

/// g_ab = X_a . X_b and derived quantities. Throws SingularMetric when
/// det g <= 1e-14 (sphere pole; callers use the offset grid instead).
ChartMetric chart_metric(const ParametricChart& chart, double u, double v);

}  // namespace surfq
