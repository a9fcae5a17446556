#pragma once

#include "surfq/brackets.hpp"
#include "surfq/grid.hpp"
#include "surfq/spectrum.hpp"
#include "surfq/types.hpp"
#include "surfq/verify.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace surfq {

using Json = nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip an IEEE double, and a fixed
/// format keeps machine-readable outputs byte-identical across runs.
std::string format_double(double v);

/// Everything a report needs to be reproduced.
struct Provenance {
    std::string surface_id;
    std::vector<std::pair<std::string, double>> params;
    std::vector<std::pair<int, int>> grids;
    int samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    PhysicalConstants constants;
    std::string suite_version;
};

Json provenance_json(const Provenance& p);

/// Curvature table: one CSV row per grid node with header
/// u,v,x,y,z,nx,ny,nz,M,K,VG.
void write_curvature_table(std::ostream& os, const SurfaceGrid& grid,
                           const PhysicalConstants& constants);
Json curvature_json(const SurfaceGrid& grid, const PhysicalConstants& constants,
                    const Provenance& prov);

void write_bracket_table(std::ostream& os, const std::vector<BracketIdentityReport>& reports);
Json bracket_json(const std::vector<BracketIdentityReport>& reports, const Provenance& prov);

/// Spectrum table: index,eigenvalue,residual.
void write_spectrum_table(std::ostream& os, const SpectrumResult& result);
Json spectrum_json(const SpectrumResult& result, const Provenance& prov);

void write_verification_table(std::ostream& os, const std::vector<VerificationReport>& reports);
Json verification_json(const std::vector<VerificationReport>& reports, const Provenance& prov);
Json verification_report_json(const VerificationReport& report);

}  // namespace surfq
