#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leakywire/errors.hpp"
#include "leakywire/reports.hpp"
#include "leakywire/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace leakywire;
using std::numbers::pi;

namespace {

RunConfig from_text(const std::string& text) {
    return make_config(parse_kv_text(text));
}

} // namespace

TEST_CASE("config happy path and defaults") {
    const auto cfg = from_text("command = spectrum\n"
                               "curve.builtin = circle\n"
                               "curve.radius = 1\n"
                               "alpha = -1.5\n");
    CHECK(cfg.command == Command::spectrum);
    CHECK(cfg.builtin == "circle");
    CHECK(cfg.curve_params.at("radius") == 1.0);
    REQUIRE(cfg.alphas.size() == 1);
    CHECK(cfg.alphas[0] == -1.5);
    // declared defaults
    CHECK(cfg.n == 2048);
    CHECK(cfg.theta_count == 64);
    CHECK(!cfg.d_fixed);
    CHECK(cfg.bc == BoundaryCondition::periodic);
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(from_text("command = spectrum\nalpha = -1\n"), ConfigError);
    CHECK_THROWS_AS(from_text("command = spectrum\ncurve.builtin = circle\n"
                              "curve.samples = pts.csv\nalpha = -1\n"),
                    ConfigError); // conflicting curve sources
    CHECK_THROWS_AS(from_text("command = spectrum\ncurve.builtin = circle\n"),
                    ConfigError); // empty alpha sweep
    CHECK_THROWS_AS(from_text("command = spectrum\ncurve.builtin = circle\n"
                              "alpha = -1\nwibble = 3\n"),
                    ConfigError); // unknown key, no silent ignore
    CHECK_THROWS_AS(from_text("command = warp\ncurve.builtin = circle\n"
                              "alpha = -1\n"),
                    ConfigError);
    CHECK_THROWS_AS(from_text("command = spectrum\ncurve.builtin = circle\n"
                              "alpha = -1\nd.rule = fixed\nd.value = -0.1\n"),
                    ConfigError); // tube radius must be positive
    CHECK_THROWS_AS(parse_kv_text("no equals sign here\n"), ConfigError);
    CHECK_THROWS_AS(parse_kv_text("a = 1\na = 2\n"), ConfigError);
}

TEST_CASE("comments, sweeps and overrides") {
    auto kv = parse_kv_text("# a comment\n"
                            "command = transverse  # trailing comment\n"
                            "curve.builtin = circle\n"
                            "alpha = -1, -1.5, -2\n");
    apply_override(kv, "alpha=-2.5");
    apply_override(kv, "d.rule=fixed");
    apply_override(kv, "d.value=0.01");
    const auto cfg = make_config(kv);
    CHECK(cfg.command == Command::transverse);
    REQUIRE(cfg.alphas.size() == 1);
    CHECK(cfg.alphas[0] == -2.5);
    CHECK(cfg.d_fixed);
    CHECK(resolve_d(cfg, -2.5) == 0.01);
    CHECK_THROWS_AS(apply_override(kv, "novalue"), ConfigError);

    const auto sweep = from_text("command = transverse\n"
                                 "curve.builtin = circle\n"
                                 "alpha = -1, -1.5, -2\n");
    REQUIRE(sweep.alphas.size() == 3);
    CHECK(resolve_d(sweep, -1.0) == doctest::Approx(std::exp(-pi)).epsilon(1e-15));
}

TEST_CASE("curve source resolution") {
    const auto circ = from_text("command = spectrum\ncurve.builtin = circle\n"
                                "alpha = -1\ngrid = 256\n");
    const auto in1 = resolve_input(circ);
    CHECK(in1.profile.L == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(in1.K == 0.0); // loops have no quasimomentum scale

    const auto helix = from_text("command = bands\ncurve.builtin = helix\n"
                                 "curve.radius = 1\ncurve.pitch = 1\n"
                                 "alpha = -1\ngrid = 256\n");
    CHECK(resolve_input(helix).K == doctest::Approx(2.0 * pi).epsilon(1e-9));

    const auto forced = from_text("command = bands\ncurve.builtin = helix\n"
                                  "curve.radius = 1\ncurve.pitch = 1\n"
                                  "alpha = -1\ngrid = 256\nK = 3.5\n");
    CHECK(resolve_input(forced).K == 3.5);
}

TEST_CASE("seventeen-digit floats round-trip") {
    for (double x : {1.0 / 3.0, -0.1, 2.0 * pi, 1e-300, -3.5e17,
                     0.1234567890123456}) {
        const std::string s = format_g17(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("atomic writes") {
    namespace fs = std::filesystem;
    const std::string path = "test_cli_atomic.txt";
    write_text_atomic(path, "hello\n");
    {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == "hello\n");
    }
    CHECK(!fs::exists(path + ".tmp"));
    write_text_atomic(path, "replaced\n"); // overwrite is atomic too
    {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == "replaced\n");
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_atomic("/definitely/not/here/x.csv", "x"),
                    IoError);
}

TEST_CASE("csv schemas") {
    SpectrumResult res;
    res.mu = {-0.25, 0.75};
    res.refine_error = {1e-9, 2e-9};
    const auto sp = spectrum_csv(res);
    CHECK(sp.rfind("j,mu,refine_error\n", 0) == 0);
    CHECK(sp.find("1,-0.25,") != std::string::npos);

    BandTable table;
    table.K = 1.0;
    table.thetas = {-0.5, 0.0};
    table.bands = {{1.0, 2.0}, {1.5, 2.5}};
    const auto bc = bands_csv(table);
    CHECK(bc.rfind("theta,j,mu\n", 0) == 0);
    CHECK(bc.find("-0.5,1,1\n") != std::string::npos);

    SqueezeReport rep;
    rep.rows.push_back({1, -2.0, -1.5, -1.0, true, true});
    const auto sq = squeeze_csv(rep);
    CHECK(sq == "j,lower,center,upper,pass\n1,-2,-1.5,-1,1\n");
}
