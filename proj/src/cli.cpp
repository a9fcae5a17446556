#include "surfq/cli.hpp"

#include "surfq/brackets.hpp"
#include "surfq/report.hpp"
#include "surfq/spectrum.hpp"
#include "surfq/surface.hpp"
#include "surfq/verify.hpp"
#include "surfq/version.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <optional>

namespace surfq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct RunConfig {
    std::string surface_id = "sphere";
    double radius = 1.0;
    double major = 2.0, minor = 0.5;
    double a = 2.0, b = 1.0, c = 1.0;
    double period = kTwoPi;
    std::vector<std::string> grid_specs;
    int samples = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int k = 6;
    bool no_vg = false;
    std::string out_path;
    std::string format = "table";
    int threads = 1;
    std::string config_path;
    PhysicalConstants constants;

    Surface surface() const {
        if (surface_id == "sphere") return make_sphere(radius);
        if (surface_id == "cylinder") return make_cylinder(radius, period);
        if (surface_id == "torus") return make_torus(major, minor);
        if (surface_id == "ellipsoid") return make_ellipsoid(a, b, c);
        if (surface_id == "plane") return make_plane();
        throw ConfigError("unknown surface '" + surface_id + "'");
    }

    std::vector<std::pair<int, int>> grids_or(const std::vector<std::pair<int, int>>& fallback) const {
        if (grid_specs.empty()) return fallback;
        std::vector<std::pair<int, int>> out;
        for (const auto& spec : grid_specs) {
            const auto xpos = spec.find('x');
            if (xpos == std::string::npos) {
                throw ConfigError("--grid expects NxM, got '" + spec + "'");
            }
            try {
                const int nu = std::stoi(spec.substr(0, xpos));
                const int nv = std::stoi(spec.substr(xpos + 1));
                out.emplace_back(nu, nv);
            } catch (const std::exception&) {
                throw ConfigError("--grid expects NxM, got '" + spec + "'");
            }
        }
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i].first <= out[i - 1].first || out[i].second <= out[i - 1].second) {
                throw ConfigError("ladder grids must be strictly increasing");
            }
        }
        return out;
    }

    std::vector<std::pair<int, int>> default_ladder() const {
        if (surface_id == "sphere" || surface_id == "ellipsoid") {
            return {{32, 64}, {48, 96}, {64, 128}};
        }
        return {{32, 32}, {48, 48}, {64, 64}};
    }

    Provenance provenance(const Surface& s, const std::vector<std::pair<int, int>>& grids) const {
        Provenance p;
        p.surface_id = s.id;
        p.params = s.params;
        p.grids = grids;
        p.samples = samples;
        p.seed = seed;
        p.tolerance = tol;
        p.constants = constants;
        p.suite_version = VerifySuite{}.version;
        return p;
    }
};

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--surface", cfg.surface_id, "sphere|cylinder|torus|ellipsoid|plane")
        ->check(CLI::IsMember({"sphere", "cylinder", "torus", "ellipsoid", "plane"}));
    cmd->add_option("--radius", cfg.radius, "sphere/cylinder radius");
    cmd->add_option("--R", cfg.major, "torus major radius");
    cmd->add_option("--r", cfg.minor, "torus minor radius");
    cmd->add_option("--a", cfg.a, "ellipsoid semi-axis a");
    cmd->add_option("--b", cfg.b, "ellipsoid semi-axis b");
    cmd->add_option("--c", cfg.c, "ellipsoid semi-axis c");
    cmd->add_option("--period", cfg.period, "cylinder axial period");
    cmd->add_option("--grid", cfg.grid_specs, "grid NxM; repeat to form a ladder");
    cmd->add_option("--samples", cfg.samples, "phase-point sample count");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--tol", cfg.tol, "residual tolerance");
    cmd->add_option("--k", cfg.k, "number of eigenvalues");
    cmd->add_flag("--no-geometric-potential", cfg.no_vg, "drop V_G from the Hamiltonian");
    cmd->add_option("--out", cfg.out_path, "write machine-readable output to this path");
    cmd->add_option("--format", cfg.format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--threads", cfg.threads, "worker threads for sample sweeps");
    cmd->add_option("--hbar", cfg.constants.hbar, "Planck constant");
    cmd->add_option("--mu", cfg.constants.mu, "particle mass");
    cmd->add_option("--config", cfg.config_path,
                    "plain key=value config file; flags win on conflict");
}

/// Applies `key=value` lines for every option the command line left unset.
void apply_config_file(const CLI::App* cmd, RunConfig& cfg) {
    std::ifstream f(cfg.config_path);
    if (!f) throw ConfigError("cannot read config file '" + cfg.config_path + "'");
    auto unset = [cmd](const char* flag) { return cmd->count(flag) == 0; };
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "surface") {
                if (unset("--surface")) cfg.surface_id = value;
            } else if (key == "radius") {
                if (unset("--radius")) cfg.radius = std::stod(value);
            } else if (key == "R") {
                if (unset("--R")) cfg.major = std::stod(value);
            } else if (key == "r") {
                if (unset("--r")) cfg.minor = std::stod(value);
            } else if (key == "a") {
                if (unset("--a")) cfg.a = std::stod(value);
            } else if (key == "b") {
                if (unset("--b")) cfg.b = std::stod(value);
            } else if (key == "c") {
                if (unset("--c")) cfg.c = std::stod(value);
            } else if (key == "period") {
                if (unset("--period")) cfg.period = std::stod(value);
            } else if (key == "grid") {
                if (unset("--grid")) cfg.grid_specs.push_back(value);
            } else if (key == "samples") {
                if (unset("--samples")) cfg.samples = std::stoi(value);
            } else if (key == "seed") {
                if (unset("--seed")) cfg.seed = std::stoull(value);
            } else if (key == "tol") {
                if (unset("--tol")) cfg.tol = std::stod(value);
            } else if (key == "k") {
                if (unset("--k")) cfg.k = std::stoi(value);
            } else if (key == "no-geometric-potential") {
                if (unset("--no-geometric-potential")) cfg.no_vg = (value == "true" || value == "1");
            } else if (key == "out") {
                if (unset("--out")) cfg.out_path = value;
            } else if (key == "format") {
                if (unset("--format")) cfg.format = value;
            } else if (key == "threads") {
                if (unset("--threads")) cfg.threads = std::stoi(value);
            } else if (key == "hbar") {
                if (unset("--hbar")) cfg.constants.hbar = std::stod(value);
            } else if (key == "mu") {
                if (unset("--mu")) cfg.constants.mu = std::stod(value);
            } else {
                throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for '" +
                              key + "'");
        }
    }
    if (cfg.format != "table" && cfg.format != "json") {
        throw ConfigError("config: format must be table or json");
    }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& table, const Json& json) {
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw ConfigError("cannot open --out path '" + cfg.out_path + "'");
        f << json.dump(2) << '\n';
        out << table;
    } else if (cfg.format == "json") {
        out << json.dump(2) << '\n';
    } else {
        out << table;
    }
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    const auto grids = cfg.grids_or({{32, 64}});
    const auto [nu, nv] = grids.back();
    const SurfaceGrid grid = SurfaceGrid::build(surface, nu, nv, cfg.constants);
    std::ostringstream table;
    write_curvature_table(table, grid, cfg.constants);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw ConfigError("cannot open --out path '" + cfg.out_path + "'");
        if (cfg.format == "json") {
            f << curvature_json(grid, cfg.constants, cfg.provenance(surface, {{nu, nv}})).dump(2)
              << '\n';
        } else {
            f << table.str();
        }
    } else if (cfg.format == "json") {
        out << curvature_json(grid, cfg.constants, cfg.provenance(surface, {{nu, nv}})).dump(2)
            << '\n';
    } else {
        out << table.str();
    }
    return 0;
}

int cmd_brackets(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    const auto reports = verify_classical_identities(surface, cfg.samples, cfg.seed, cfg.tol,
                                                     cfg.threads, cfg.constants);
    std::ostringstream table;
    write_bracket_table(table, reports);
    emit(cfg, out, table.str(), bracket_json(reports, cfg.provenance(surface, {})));
    for (const auto& r : reports) {
        if (!r.pass) return 1;
    }
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    const auto grids = cfg.grids_or({cfg.default_ladder().back()});
    const auto [nu, nv] = grids.back();
    const SurfaceGrid grid = SurfaceGrid::build(surface, nu, nv, cfg.constants);
    const DiscreteOperator h = hamiltonian(grid, !cfg.no_vg, cfg.constants);
    const VecX vg = geometric_potential_diagonal(grid, cfg.constants);
    // -Lap is positive semidefinite, so the spectrum of H is bounded below by
    // min(V_G); back off by the coarsest Laplace scale for a safe shift.
    const double scale = (cfg.constants.hbar * cfg.constants.hbar / (2.0 * cfg.constants.mu)) *
                         (4.0 * kTwoPi / grid.total_area());
    const double sigma = std::min(0.0, cfg.no_vg ? 0.0 : vg.minCoeff()) - std::max(scale, 1e-3);
    const SpectrumResult spec = spectrum(h, cfg.k, cfg.tol, cfg.seed, sigma);
    std::ostringstream table;
    write_spectrum_table(table, spec);
    emit(cfg, out, table.str(), spectrum_json(spec, cfg.provenance(surface, {{nu, nv}})));
    return 0;
}

int cmd_verify_quantum(const RunConfig& cfg, std::ostream& out) {
    const Surface surface = cfg.surface();
    const auto ladder = cfg.grids_or(cfg.default_ladder());
    if (ladder.size() < 3) throw ConfigError("verify-quantum needs a ladder of >= 3 grids");
    const bool include_vg = !cfg.no_vg;

    auto reports = quantum_condition_residuals(surface, ladder, cfg.constants, include_vg);
    auto ordering = ordering_identity_checks(surface, ladder, cfg.constants);
    reports.insert(reports.end(), ordering.begin(), ordering.end());
    reports.push_back(p_squared_consistency(surface, ladder, cfg.constants));

    std::optional<DiscriminatorReport> disc;
    if (cfg.no_vg) {
        disc = geometric_potential_discriminator(surface, ladder, cfg.constants);
    }

    bool ok = true;
    std::ostringstream table;
    char line[200];
    table << "identity  coarsest-res     finest-res       order    status\n";
    for (const auto& r : reports) {
        std::string status = r.pass ? "PASS" : "FAIL";
        bool counts = r.pass;
        if (!r.pass && cfg.no_vg && (r.identity == "EQ16" || r.identity == "EQ17") && disc &&
            disc->pass) {
            // the identity is supposed to fail without the geometric
            // potential; the discriminator confirms the floor
            status = "VIOLATED-as-expected";
            counts = true;
        }
        ok = ok && counts;
        std::string order = "exact";
        if (!r.exact && !std::isnan(r.order)) {
            char b[32];
            std::snprintf(b, sizeof(b), "%.2f", r.order);
            order = b;
        }
        std::snprintf(line, sizeof(line), "%-9s %-16.6e %-16.6e %-8s %s\n", r.identity.c_str(),
                      r.grids.front().residual, r.grids.back().residual, order.c_str(),
                      status.c_str());
        table << line;
    }
    if (disc) {
        std::snprintf(line, sizeof(line),
                      "EQ17 floor ratio without/with V_G at finest grid: %.3e (%s)\n",
                      disc->floor_ratio, disc->pass ? "confirmed" : "NOT confirmed");
        table << line;
        ok = ok && disc->pass;
    }

    Json j = verification_json(reports, cfg.provenance(surface, ladder));
    if (disc) {
        j["mode"] = "discriminator";
        j["discriminator"] = {{"eq17_with_vg", verification_report_json(disc->with_vg)},
                              {"eq17_without_vg", verification_report_json(disc->without_vg)},
                              {"floor_ratio", disc->floor_ratio},
                              {"pass", disc->pass}};
    }
    emit(cfg, out, table.str(), j);
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum mechanics of a particle constrained to a surface: curvature "
                 "tables, Dirac-bracket verification, spectra and quantum-condition checks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* curvature = app.add_subcommand("curvature", "export the per-node curvature table");
    CLI::App* brackets = app.add_subcommand("brackets", "verify the classical bracket identities");
    CLI::App* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of the Hamiltonian");
    CLI::App* verify = app.add_subcommand("verify-quantum",
                                          "quantum-condition and ordering-identity ladders");
    for (CLI::App* cmd : {curvature, brackets, spectrum, verify}) add_common_options(cmd, cfg);

    // CLI11 wants argv-style reversed arguments
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        CLI::App* active = nullptr;
        for (CLI::App* cmd : {curvature, brackets, spectrum, verify}) {
            if (cmd->parsed()) active = cmd;
        }
        if (active == nullptr) {
            err << "no subcommand given\n";
            return 2;
        }
        if (!cfg.config_path.empty()) apply_config_file(active, cfg);
        cfg.grids_or({{8, 8}});  // validate grid specs regardless of subcommand
        if (curvature->parsed()) return cmd_curvature(cfg, out);
        if (brackets->parsed()) return cmd_brackets(cfg, out);
        if (spectrum->parsed()) return cmd_spectrum(cfg, out);
        return cmd_verify_quantum(cfg, out);
    } catch (const NoConvergence& e) {
        err << "solver did not converge: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace surfq
