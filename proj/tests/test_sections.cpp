#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"
#include "lnc/sections.hpp"

using namespace lnc;

namespace {

BodyPtr square01() {
    // [0,1] x [-1,1]
    Matrix A(4, 2);
    A(0, 0) = 1.0;
    A(1, 0) = -1.0;
    A(2, 1) = 1.0;
    A(3, 1) = -1.0;
    return std::make_shared<HPolytope>(A, Vector{1.0, 0.0, 1.0, 1.0},
                                       Vector{0.5, 0.0});
}

LinearMap map_x2() {
    Matrix A(1, 2);
    A(0, 0) = 1.0;
    return LinearMap(A);
}

LinearMap map_x3() {
    Matrix A(1, 3);
    A(0, 0) = 1.0;
    return LinearMap(A);
}

LinearMap proj_xy() {
    Matrix A(2, 3);
    A(0, 0) = 1.0;
    A(1, 1) = 1.0;
    return LinearMap(A);
}

}  // namespace

TEST_CASE("endpoint sections over a box fiber") {
    ToolConfig cfg;
    auto Q = square01();
    LinearMap T = map_x2();

    GvPoint lo = section_gv_fiber(Q, T, {0.5}, GvMode::LOWEST, cfg);
    CHECK(vdist(lo.point, {0.5, -1.0}) < 1e-6);
    CHECK_FALSE(lo.clipped);

    GvPoint ab = section_gv_fiber(Q, T, {0.5}, GvMode::MIN_ABS, cfg);
    CHECK(vdist(ab.point, {0.5, 0.0}) < 1e-6);
}

TEST_CASE("min-abs picks the fiber point nearest zero kernel coordinate") {
    ToolConfig cfg;
    // [0,1] x [0.25, 1]: zero is outside, the lower endpoint is nearest
    Matrix A(4, 2);
    A(0, 0) = 1.0;
    A(1, 0) = -1.0;
    A(2, 1) = 1.0;
    A(3, 1) = -1.0;
    auto Q = std::make_shared<HPolytope>(A, Vector{1.0, 0.0, 1.0, -0.25},
                                         Vector{0.5, 0.5});
    GvPoint ab = section_gv_fiber(Q, map_x2(), {0.5}, GvMode::MIN_ABS, cfg);
    CHECK(vdist(ab.point, {0.5, 0.25}) < 1e-6);
}

TEST_CASE("direction-addressed section uses the quotient map") {
    ToolConfig cfg;
    auto Q = square01();
    Vector v{0.0, 1.0};
    LinearMap T = quotient_map(v);
    CHECK(T.rows() == 1);
    CHECK(vnorm(T.apply(v)) < 1e-12);

    GvPoint g = section_gv(Q, v, T.apply({0.5, 0.0}), GvMode::LOWEST, cfg);
    CHECK(Q->inside(g.point, 1e-6));
    CHECK(g.point[1] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("gv requires a one dimensional kernel") {
    ToolConfig cfg;
    auto B = std::make_shared<Ball>(Vector{0.0, 0.0, 0.0}, 1.0);
    CHECK_THROWS_AS(section_gv_fiber(B, map_x3(), {0.0}, GvMode::LOWEST, cfg),
                    std::invalid_argument);
}

TEST_CASE("endpoint section lands on the sphere") {
    ToolConfig cfg;
    auto B = std::make_shared<Ball>(Vector{0.2, -0.1, 0.3}, 1.0);
    GvPoint g = section_gv_fiber(B, proj_xy(), {0.2, -0.1}, GvMode::LOWEST, cfg);
    CHECK(vdist(g.point, {0.2, -0.1, -0.7}) < 1e-6);
}

TEST_CASE("minimum norm and distance sections agree with the fiber solver") {
    ToolConfig cfg;
    auto Q = square01();
    Vector mn = section_min_norm(Q, map_x2(), {0.5}, cfg);
    CHECK(vdist(mn, {0.5, 0.0}) < 1e-6);

    Vector md = section_min_dist(Q, map_x2(), {0.5}, cfg);
    // least squares preimage of 0.5 is (0.5, 0), already in the fiber
    CHECK(vdist(md, {0.5, 0.0}) < 1e-6);
}

TEST_CASE("lexicographic slice on the reciprocal epigraph") {
    ToolConfig cfg;
    auto E = std::make_shared<Epigraph19>();
    Matrix A(1, 3);
    A(0, 0) = 1.0;
    LinearMap T(A);

    for (double x : {1.0, 0.5, 0.25}) {
        GammaResult r = section_gamma(E, T, {x}, {}, cfg);
        CHECK(vdist(r.point, {x, 0.0, 1.0 / x}) < 1e-6);
    }
    GammaResult r0 = section_gamma(E, T, {0.0}, {}, cfg);
    CHECK(vdist(r0.point, {0.0, 1.0, 0.0}) < 1e-6);
}

TEST_CASE("gamma default family reduces to the kernel coordinates") {
    ToolConfig cfg;
    auto Q = square01();
    GammaResult r = section_gamma(Q, map_x2(), {0.25}, {}, cfg);
    CHECK(vdist(r.point, {0.25, -1.0}) < 1e-6);
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("gamma rejects families that do not separate the kernel") {
    ToolConfig cfg;
    auto Q = square01();
    // kernel of the x-map is the y-axis; a family of x-functionals is blind
    std::vector<Vector> family{{1.0, 0.0}};
    CHECK_THROWS_AS(section_gamma(Q, map_x2(), {0.5}, family, cfg),
                    std::invalid_argument);
}

TEST_CASE("evaluate_section dispatches all methods") {
    ToolConfig cfg;
    SectionSpec spec{square01(), map_x2()};
    bool clipped = true;
    for (SectionMethod m : {SectionMethod::GV_LOWEST, SectionMethod::GV_MIN_ABS,
                            SectionMethod::MIN_NORM, SectionMethod::MIN_DIST,
                            SectionMethod::GAMMA}) {
        spec.method = m;
        Vector g = evaluate_section(spec, {0.5}, &clipped, cfg);
        REQUIRE(g.size() == 2);
        CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(spec.Q->inside(g, 1e-6));
    }
}

TEST_CASE("continuity probe along a box edge stays small") {
    ToolConfig cfg;
    SectionSpec spec{square01(), map_x2(), SectionMethod::GAMMA};
    std::vector<Vector> targets;
    for (int i = 0; i < 100; ++i)
        targets.push_back({0.1 + 0.8 * i / 99.0});
    ProbeResult pr = probe_continuity(spec, targets, 0, cfg);
    REQUIRE(pr.steps.size() == 100);
    CHECK_FALSE(pr.empty_index.has_value());
    CHECK(pr.max_jump <= 0.1);
    for (const ProbeStep& s : pr.steps) {
        CHECK(s.residual < 1e-7);
        CHECK(s.margin < 1e-6);
    }
}

TEST_CASE("probe reports the empty fiber position") {
    ToolConfig cfg;
    Matrix A(1, 2);
    A(0, 0) = 1.0;
    A(0, 1) = 1.0;
    SectionSpec spec{square01(), LinearMap(A), SectionMethod::GV_LOWEST};
    ProbeResult pr = probe_continuity(spec, {{0.5}, {1.5}, {9.0}}, 0, cfg);
    REQUIRE(pr.empty_index.has_value());
    CHECK(*pr.empty_index == 2);
    CHECK(pr.steps.size() == 2);
}

TEST_CASE("refinement inserts midpoints around the largest jump") {
    ToolConfig cfg;
    auto disk = std::make_shared<Ball>(Vector{1.0, 0.0}, 1.0);
    SectionSpec spec{std::make_shared<Suspension>(disk), proj_xy(),
                     SectionMethod::GV_LOWEST};
    std::vector<Vector> targets;
    for (int i = 0; i <= 10; ++i) {
        double t = 1.0 - i * (0.99 / 10.0);
        targets.push_back({1.0 - std::cos(t), std::sin(t)});
    }
    targets.push_back({0.0, 0.0});
    ProbeResult coarse = probe_continuity(spec, targets, 0, cfg);
    CHECK(coarse.max_jump > 0.99);
    CHECK(coarse.argmax == coarse.steps.size() - 1);

    // bisecting the jump interval re-routes through the interior, where the
    // endpoint section is continuous, so the jump shrinks by about half per
    // pass instead of persisting
    ProbeResult fine = probe_continuity(spec, targets, 3, cfg);
    CHECK(fine.steps.size() == coarse.steps.size() + 3);
    CHECK(fine.max_jump <= coarse.max_jump + 1e-9);
    CHECK(fine.max_jump > 0.1);
    CHECK(fine.max_jump < 0.6);
}
