#include "surfq/chart.hpp"

namespace surfq {

ChartMetric chart_metric(const ParametricChart& chart, double u, double v) {
    const Vec3 xu = chart.d_u(u, v);
    const Vec3 xv = chart.d_v(u, v);
    ChartMetric m;
    m.g << xu.dot(xu), xu.dot(xv), xv.dot(xu), xv.dot(xv);
    m.det = m.g(0, 0) * m.g(1, 1) - m.g(0, 1) * m.g(1, 0);
    if (m.det <= 1e-14) {
        throw SingularMetric("chart '" + chart.name() + "' metric singular at (u,v)=(" +
                             std::to_string(u) + "," + std::to_string(v) + ")");
    }
    m.sqrt_det = std::sqrt(m.det);
    m.g_inv << m.g(1, 1) / m.det, -m.g(0, 1) / m.det, -m.g(1, 0) / m.det, m.g(0, 0) / m.det;
    return m;
}

}  // namespace surfq
