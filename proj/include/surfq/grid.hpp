#pragma once

#include "surfq/surface.hpp"
#include "surfq/types.hpp"

#include <vector>

namespace surfq {

/// Structured quadrature grid on a chart. Periodic directions wrap; the
/// pole-offset u direction places nodes at u = (i+1/2) h so no node sits on
/// a coordinate singularity, and u-lines continue through a pole to the
/// antipodal longitude (j + Nv/2). Quadrature weight w = sqrt(g) hu hv.
class SurfaceGrid {
public:
    static SurfaceGrid build(const Surface& surface, int nu, int nv,
                             const PhysicalConstants& constants = {});

    int nu() const { return nu_; }
    int nv() const { return nv_; }
    int size() const { return nu_ * nv_; }
    double hu() const { return hu_; }
    double hv() const { return hv_; }
    double u(int i) const { return us_[static_cast<std::size_t>(i)]; }
    double v(int j) const { return vs_[static_cast<std::size_t>(j)]; }
    int index(int i, int j) const { return i * nv_ + j; }
    int index_u(int k) const { return k / nv_; }
    int index_v(int k) const { return k % nv_; }

    /// Neighbor along u (|step| <= 2), crossing poles by reflection.
    int neighbor_u(int i, int j, int step) const;
    int neighbor_v(int i, int j, int step) const;

    const Surface& surface() const { return surface_; }
    const CurvatureSample& sample(int k) const { return samples_[static_cast<std::size_t>(k)]; }
    const VecX& weights() const { return weight_; }
    const VecX& sqrt_weights() const { return sqrt_weight_; }
    const VecX& sqrt_g() const { return sqrt_g_; }
    double total_area() const { return weight_.sum(); }

private:
    Surface surface_;
    int nu_ = 0, nv_ = 0;
    double hu_ = 0.0, hv_ = 0.0;
    std::vector<double> us_, vs_;
    std::vector<CurvatureSample> samples_;
    VecX weight_, sqrt_weight_, sqrt_g_;
};

}  // namespace surfq
