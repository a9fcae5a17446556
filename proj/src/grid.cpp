#include "surfq/grid.hpp"

namespace surfq {

SurfaceGrid SurfaceGrid::build(const Surface& surface, int nu, int nv,
                               const PhysicalConstants& constants) {
    if (nu < 4 || nv < 4) throw ConfigError("grid: need at least 4x4 nodes");
    const ParametricChart& ch = surface.chart;
    if (ch.pole_offset_u() && (nv % 2) != 0) {
        throw ConfigError("grid: pole-offset charts need an even longitudinal count");
    }
    SurfaceGrid g;
    g.surface_ = surface;
    g.nu_ = nu;
    g.nv_ = nv;
    g.hu_ = ch.len_u() / nu;
    g.hv_ = ch.len_v() / nv;
    const double off_u = (ch.pole_offset_u() || !ch.periodic_u()) ? 0.5 : 0.0;
    g.us_.resize(static_cast<std::size_t>(nu));
    g.vs_.resize(static_cast<std::size_t>(nv));
    for (int i = 0; i < nu; ++i) g.us_[static_cast<std::size_t>(i)] = ch.u0() + (i + off_u) * g.hu_;
    for (int j = 0; j < nv; ++j) g.vs_[static_cast<std::size_t>(j)] = ch.v0() + j * g.hv_;

    const int n = nu * nv;
    g.samples_.resize(static_cast<std::size_t>(n));
    g.weight_.resize(n);
    g.sqrt_weight_.resize(n);
    g.sqrt_g_.resize(n);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const int k = g.index(i, j);
            const double u = g.us_[static_cast<std::size_t>(i)];
            const double v = g.vs_[static_cast<std::size_t>(j)];
            const ChartMetric m = chart_metric(ch, u, v);  // throws SingularMetric on poles
            if (m.sqrt_det < 1e-10) {
                throw SingularMetric("grid: sqrt(g) below 1e-10 at a node");
            }
            const Vec3 x = project_to_surface(surface.implicit, ch.position(u, v));
            g.samples_[static_cast<std::size_t>(k)] = curvature_at(surface.implicit, x, constants);
            g.sqrt_g_[k] = m.sqrt_det;
            g.weight_[k] = m.sqrt_det * g.hu_ * g.hv_;
            g.sqrt_weight_[k] = std::sqrt(g.weight_[k]);
        }
    }
    return g;
}

int SurfaceGrid::neighbor_u(int i, int j, int step) const {
    int ii = i + step;
    int jj = j;
    if (surface_.chart.periodic_u()) {
        ii = (ii % nu_ + nu_) % nu_;
        return index(ii, jj);
    }
    if (ii < 0) {
        ii = -ii - 1;  // reflect across the u0 pole
        jj = (j + nv_ / 2) % nv_;
    } else if (ii >= nu_) {
        ii = 2 * nu_ - 1 - ii;  // reflect across the u1 pole
        jj = (j + nv_ / 2) % nv_;
    }
    return index(ii, jj);
}

int SurfaceGrid::neighbor_v(int i, int j, int step) const {
    const int jj = ((j + step) % nv_ + nv_) % nv_;
    return index(i, jj);
}

}  // namespace surfq
