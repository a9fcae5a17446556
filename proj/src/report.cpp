#include "surfq/report.hpp"

#include "surfq/operators.hpp"
#include "surfq/version.hpp"

#include <cmath>
#include <cstdio>

namespace surfq {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json provenance_json(const Provenance& p) {
    Json j;
    j["surface"] = p.surface_id;
    Json params = Json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    j["params"] = params;
    if (!p.grids.empty()) {
        Json grids = Json::array();
        for (const auto& [nu, nv] : p.grids) grids.push_back({{"nu", nu}, {"nv", nv}});
        j["grids"] = grids;
    }
    if (p.samples > 0) j["samples"] = p.samples;
    j["seed"] = p.seed;
    j["tolerance"] = p.tolerance;
    j["hbar"] = p.constants.hbar;
    j["mu"] = p.constants.mu;
    j["suite"] = p.suite_version;
    j["version"] = kVersion;
    return j;
}

void write_curvature_table(std::ostream& os, const SurfaceGrid& grid,
                           const PhysicalConstants& constants) {
    os << "u,v,x,y,z,nx,ny,nz,M,K,VG\n";
    const VecX vg = geometric_potential_diagonal(grid, constants);
    for (int i = 0; i < grid.nu(); ++i) {
        for (int j = 0; j < grid.nv(); ++j) {
            const int k = grid.index(i, j);
            const CurvatureSample& s = grid.sample(k);
            os << format_double(grid.u(i)) << ',' << format_double(grid.v(j)) << ','
               << format_double(s.x[0]) << ',' << format_double(s.x[1]) << ','
               << format_double(s.x[2]) << ',' << format_double(s.n[0]) << ','
               << format_double(s.n[1]) << ',' << format_double(s.n[2]) << ','
               << format_double(s.mean_sum) << ',' << format_double(s.gauss) << ','
               << format_double(vg[k]) << '\n';
        }
    }
}

Json curvature_json(const SurfaceGrid& grid, const PhysicalConstants& constants,
                    const Provenance& prov) {
    Json j;
    j["provenance"] = provenance_json(prov);
    const VecX vg = geometric_potential_diagonal(grid, constants);
    Json rows = Json::array();
    for (int i = 0; i < grid.nu(); ++i) {
        for (int jj = 0; jj < grid.nv(); ++jj) {
            const int k = grid.index(i, jj);
            const CurvatureSample& s = grid.sample(k);
            rows.push_back({{"u", grid.u(i)},
                            {"v", grid.v(jj)},
                            {"x", s.x[0]},
                            {"y", s.x[1]},
                            {"z", s.x[2]},
                            {"nx", s.n[0]},
                            {"ny", s.n[1]},
                            {"nz", s.n[2]},
                            {"M", s.mean_sum},
                            {"K", s.gauss},
                            {"VG", vg[k]}});
        }
    }
    j["rows"] = rows;
    return j;
}

void write_bracket_table(std::ostream& os, const std::vector<BracketIdentityReport>& reports) {
    os << "identity  samples  max|residual|          tolerance              status\n";
    char line[160];
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-9s %-8d %-22.12e %-22.12e %s\n", r.id.c_str(),
                      r.samples, r.max_residual, r.tolerance, r.pass ? "PASS" : "FAIL");
        os << line;
    }
}

Json bracket_json(const std::vector<BracketIdentityReport>& reports, const Provenance& prov) {
    Json j;
    j["provenance"] = provenance_json(prov);
    Json ids = Json::object();
    for (const auto& r : reports) {
        ids[r.id] = {{"samples", r.samples},
                     {"max_residual", r.max_residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}};
    }
    j["identities"] = ids;
    return j;
}

void write_spectrum_table(std::ostream& os, const SpectrumResult& result) {
    os << "index,eigenvalue,residual\n";
    for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
        os << i << ',' << format_double(result.eigenvalues[i]) << ','
           << format_double(result.residuals[i]) << '\n';
    }
}

Json spectrum_json(const SpectrumResult& result, const Provenance& prov) {
    Json j;
    j["provenance"] = provenance_json(prov);
    Json vals = Json::array();
    Json resid = Json::array();
    for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
        vals.push_back(result.eigenvalues[i]);
        resid.push_back(result.residuals[i]);
    }
    j["eigenvalues"] = vals;
    j["residuals"] = resid;
    j["iterations"] = result.iterations;
    j["max_residual"] = result.max_residual;
    j["shift"] = result.shift;
    return j;
}

Json verification_report_json(const VerificationReport& report) {
    Json grids = Json::array();
    for (const auto& g : report.grids) {
        grids.push_back({{"n_u", g.nu}, {"n_v", g.nv}, {"residual", g.residual}});
    }
    Json j;
    j["identity"] = report.identity;
    j["grids"] = grids;
    if (report.exact || std::isnan(report.order)) {
        j["order"] = "exact";
    } else {
        j["order"] = report.order;
    }
    j["pass"] = report.pass;
    return j;
}

void write_verification_table(std::ostream& os, const std::vector<VerificationReport>& reports) {
    char line[200];
    os << "identity  coarsest-res     finest-res       order    status\n";
    for (const auto& r : reports) {
        const std::string order =
            (r.exact || std::isnan(r.order)) ? std::string("exact")
                                             : [&] {
                                                   char b[32];
                                                   std::snprintf(b, sizeof(b), "%.2f", r.order);
                                                   return std::string(b);
                                               }();
        std::snprintf(line, sizeof(line), "%-9s %-16.6e %-16.6e %-8s %s\n", r.identity.c_str(),
                      r.grids.front().residual, r.grids.back().residual, order.c_str(),
                      r.pass ? "PASS" : "FAIL");
        os << line;
    }
}

Json verification_json(const std::vector<VerificationReport>& reports, const Provenance& prov) {
    Json j;
    j["provenance"] = provenance_json(prov);
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(verification_report_json(r));
    j["reports"] = list;
    return j;
}

}  // namespace surfq
