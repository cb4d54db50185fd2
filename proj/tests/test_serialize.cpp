#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "inls/serialize.hpp"
#include "inls/svg.hpp"

using namespace inls;

TEST_CASE("config parsing") {
    std::istringstream in(R"(
# sample
[model]
alpha = 2.5
b = 0.3
sign = defocusing
[grid]
r_max = 12.5
n = 512
[time]
dt = 5e-4
t_end = 2
[initial]
kind = gaussian
amplitude = 1.5
[detection]
ball_radii = 1, 2.5, 5
)");
    auto sim = config_from_map(parse_config(in));
    CHECK(sim.params.alpha == 2.5);
    CHECK(sim.params.b == 0.3);
    CHECK(sim.params.kappa == +1);
    CHECK(sim.r_max == 12.5);
    CHECK(sim.n == 512);
    CHECK(sim.dt == 5e-4);
    CHECK(sim.t_end == 2.0);
    CHECK(sim.initial.kind == "gaussian");
    CHECK(sim.initial.amplitude == 1.5);
    REQUIRE(sim.ball_radii.size() == 3);
    CHECK(sim.ball_radii[1] == 2.5);

    std::istringstream bad("[model]\nalpha 2\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    std::istringstream badsign("[model]\nsign = sideways\n");
    CHECK_THROWS_AS(config_from_map(parse_config(badsign)), std::invalid_argument);
}

TEST_CASE("records CSV is deterministic across repeated runs") {
    SimulationConfig cfg;
    cfg.params = {2.0, 0.5, +1};
    cfg.n = 256;
    cfg.r_max = 10.0;
    cfg.dt = 1e-2;
    cfg.t_end = 0.3;
    cfg.record_stride = 5;
    auto ts1 = run(cfg);
    auto ts2 = run(cfg);
    std::ostringstream a, b;
    write_records_csv(a, ts1);
    write_records_csv(b, ts2);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("t,mass,energy") == 0);
    // ball columns for each configured radius plus the reflection shell
    CHECK(a.str().find("ball_mass_r2") != std::string::npos);
    CHECK(a.str().find("ball_mass_r9") != std::string::npos);
}

TEST_CASE("json artifacts carry the schema version") {
    auto grid = build_grid(10.0, 256);
    auto cert = certify(builtin("gaussian", 1.0), *grid);
    auto j = to_json(cert);
    CHECK(j["schema_version"] == schema_version);
    CHECK(j["flags"]["nonnegative"] == true);

    SimulationConfig cfg;
    cfg.params = {2.0, 0.5, +1};
    cfg.n = 256;
    cfg.r_max = 10.0;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;
    auto ts = run(cfg);
    auto ej = events_json(ts);
    CHECK(ej["schema_version"] == schema_version);
    REQUIRE(!ej["events"].empty());
    CHECK(ej["events"].back()["kind"] == "completed");
}

TEST_CASE("profile CSV round-trips the node values") {
    auto grid = build_grid(10.0, 256);
    auto u = RadialField::sample(grid, [](real r) { return cplx{std::exp(-r), 0.5 * r}; });
    std::ostringstream out;
    write_profile_csv(out, u);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,re,im");
    std::getline(in, line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::stod(line.substr(0, c1)) == grid->node(0));
    CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == u[0].real());
}

TEST_CASE("svg plot emits polylines and labels") {
    PlotSeries s{"grad", {0.0, 1.0, 2.0}, {1.0, 2.0, 1.5}};
    auto svg = svg_line_plot({s}, "demo");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("grad") != std::string::npos);
    auto svgl = svg_line_plot({s}, "demo", true);
    CHECK(svgl.find("log10") != std::string::npos);
}
