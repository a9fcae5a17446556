#include "doctest.h"

#include "surfq/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace surfq;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/surfq_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("curvature: sphere 16x32 gives 512 rows with a zero V_G column") {
    const CliResult r = run({"curvature", "--surface", "sphere", "--radius", "1", "--grid",
                             "16x32"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 513);  // header + 512 nodes
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        const auto pos = line.rfind(',');
        CHECK(std::abs(std::stod(line.substr(pos + 1))) <= 1e-12);
    }
}

TEST_CASE("curvature: cylinder radius 2 has V_G = -1/32 everywhere") {
    const CliResult r = run({"curvature", "--surface", "cylinder", "--radius", "2", "--grid",
                             "8x8"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        const auto pos = line.rfind(',');
        CHECK(std::stod(line.substr(pos + 1)) == doctest::Approx(-1.0 / 32.0).epsilon(1e-12));
    }
    CHECK(rows == 64);
}

TEST_CASE("curvature: torus K column changes sign across v = pi/2") {
    const CliResult r = run({"curvature", "--surface", "torus", "--R", "2", "--r", "0.5",
                             "--grid", "64x64"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    bool pos = false, neg = false;
    while (std::getline(is, line)) {
        // K is the second-to-last column
        const auto last = line.rfind(',');
        const auto prev = line.rfind(',', last - 1);
        const double k = std::stod(line.substr(prev + 1, last - prev - 1));
        (k > 0 ? pos : neg) = true;
    }
    CHECK(pos);
    CHECK(neg);
}

TEST_CASE("brackets: pass at 1e-8, forced failure at 1e-16, byte-identical reruns") {
    TempFile f1("brackets1.json"), f2("brackets2.json");
    const CliResult ok = run({"brackets", "--surface", "sphere", "--samples", "200", "--seed",
                              "1", "--tol", "1e-8", "--out", f1.path});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    const CliResult again = run({"brackets", "--surface", "sphere", "--samples", "200", "--seed",
                                 "1", "--tol", "1e-8", "--out", f2.path});
    CHECK(again.code == 0);
    CHECK(slurp(f1.path) == slurp(f2.path));
    CHECK(ok.out == again.out);

    const CliResult fail = run({"brackets", "--surface", "sphere", "--samples", "50", "--seed",
                                "1", "--tol", "1e-16"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("FAIL") != std::string::npos);
}

TEST_CASE("brackets: JSON report carries provenance and identity keys") {
    TempFile f("brackets_prov.json");
    const CliResult r = run({"brackets", "--surface", "torus", "--R", "2", "--r", "0.5",
                             "--samples", "64", "--seed", "9", "--tol", "1e-8", "--out", f.path});
    REQUIRE(r.code == 0);
    const std::string j = slurp(f.path);
    for (const char* key : {"\"surface\": \"torus\"", "\"seed\": 9", "\"tolerance\"",
                            "\"version\"", "\"EQ3\"", "\"EQ6\"", "\"NT0\"", "\"CMAT\"",
                            "\"CHI\""}) {
        CAPTURE(key);
        CHECK(j.find(key) != std::string::npos);
    }
}

TEST_CASE("spectrum: sphere eigenvalues and the no-potential flag") {
    const CliResult a = run({"spectrum", "--surface", "sphere", "--grid", "32x64", "--k", "9"});
    REQUIRE(a.code == 0);
    const CliResult b = run({"spectrum", "--surface", "sphere", "--grid", "32x64", "--k", "9",
                             "--no-geometric-potential"});
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);  // V_G vanishes identically on the sphere

    std::istringstream is(a.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "index,eigenvalue,residual");
    const double expected[9] = {0, 1, 1, 1, 3, 3, 3, 3, 3};
    for (int i = 0; i < 9; ++i) {
        REQUIRE(std::getline(is, line));
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double lambda = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(std::abs(lambda - expected[i]) <= 6e-3 * std::max(1.0, expected[i]));
    }
}

TEST_CASE("spectrum: torus ground energy strictly lower with V_G") {
    auto ground = [](bool with_vg) {
        std::vector<std::string> args = {"spectrum", "--surface", "torus", "--R", "2",
                                         "--r", "0.5", "--grid", "32x32", "--k", "4"};
        if (!with_vg) args.push_back("--no-geometric-potential");
        const CliResult r = run(args);
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        std::string line;
        std::getline(is, line);
        std::getline(is, line);
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        return std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    };
    CHECK(ground(true) < ground(false) - 1e-4);
}

TEST_CASE("verify-quantum: torus ladder passes; discriminator flags the expected violation") {
    TempFile f("verify.json");
    const CliResult ok = run({"verify-quantum", "--surface", "torus", "--R", "2", "--r", "0.5",
                              "--grid", "16x16", "--grid", "24x24", "--grid", "32x32", "--out",
                              f.path});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    const std::string j = slurp(f.path);
    for (const char* key : {"\"identity\": \"EQ13\"", "\"identity\": \"EQ17\"",
                            "\"identity\": \"EQ26\"", "\"identity\": \"P2\"", "\"order\"",
                            "\"pass\"", "\"grids\""}) {
        CAPTURE(key);
        CHECK(j.find(key) != std::string::npos);
    }

    const CliResult disc = run({"verify-quantum", "--surface", "torus", "--R", "2", "--r", "0.5",
                                "--grid", "16x16", "--grid", "24x24", "--grid", "32x32",
                                "--no-geometric-potential"});
    CHECK(disc.code == 0);
    CHECK(disc.out.find("VIOLATED-as-expected") != std::string::npos);
    CHECK(disc.out.find("floor ratio") != std::string::npos);
}

TEST_CASE("verify-quantum: flat chart reports exact orders") {
    const CliResult r = run({"verify-quantum", "--surface", "plane", "--grid", "12x12", "--grid",
                             "16x16", "--grid", "24x24"});
    CHECK(r.code == 0);
    CHECK(r.out.find("exact") != std::string::npos);
}

TEST_CASE("exit code 2 on malformed input, 0 on help") {
    CHECK(run({"curvature", "--surface", "dodecahedron"}).code == 2);
    CHECK(run({"brackets", "--grid", "banana"}).code == 2);
    CHECK(run({"spectrum", "--surface", "torus", "--R", "0.5", "--r", "2"}).code == 2);
    CHECK(run({"verify-quantum", "--grid", "8x8"}).code == 2);  // ladder too short
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    // spectrum k too large for the grid dimension
    CHECK(run({"spectrum", "--surface", "plane", "--grid", "8x8", "--k", "60"}).code == 2);
}

TEST_CASE("exit code 1 when the eigensolver cannot reach the tolerance") {
    const CliResult r =
        run({"spectrum", "--surface", "plane", "--grid", "8x8", "--k", "2", "--tol", "0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("converge") != std::string::npos);
}

TEST_CASE("json to stdout with --format json, never mixed with tables") {
    const CliResult r = run({"spectrum", "--surface", "plane", "--grid", "16x16", "--k", "3",
                             "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("index,eigenvalue") == std::string::npos);
    CHECK(r.out.find("\"eigenvalues\"") != std::string::npos);
    CHECK(r.out.find("\"provenance\"") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win on conflict") {
    TempFile cfg("cli.cfg");
    {
        std::ofstream f(cfg.path);
        f << "surface=cylinder\nradius=2\ngrid=8x8\n";
    }
    const CliResult r = run({"curvature", "--config", cfg.path});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 65);
    // V_G column = -1/(8*R^2) = -1/32 proves radius=2 was read
    const auto pos = r.out.rfind(',');
    CHECK(std::stod(r.out.substr(pos + 1)) == doctest::Approx(-1.0 / 32.0).epsilon(1e-12));

    const CliResult over = run({"curvature", "--config", cfg.path, "--radius", "1"});
    REQUIRE(over.code == 0);
    const auto pos2 = over.out.rfind(',');
    CHECK(std::stod(over.out.substr(pos2 + 1)) == doctest::Approx(-0.125).epsilon(1e-12));
}
