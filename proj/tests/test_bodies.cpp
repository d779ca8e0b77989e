#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"
#include "lnc/rng.hpp"

using namespace lnc;

namespace {

constexpr double kTol = 1e-9;

BodyPtr unit_cube_h(std::size_t n) {
    Matrix A(2 * n, n);
    Vector b(2 * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        A(2 * i, i) = 1.0;
        A(2 * i + 1, i) = -1.0;
    }
    return std::make_shared<HPolytope>(A, b, Vector(n, 0.0));
}

BodyPtr unit_cube_v() {
    std::vector<Vector> verts;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                verts.push_back({double(sx), double(sy), double(sz)});
    return std::make_shared<VPolytope>(verts);
}

}  // namespace

TEST_CASE("ball membership, nearest, support") {
    Ball B({1.0, -2.0}, 1.5);
    CHECK(B.inside({1.0, -2.0}, kTol));
    CHECK(B.inside({2.5, -2.0}, kTol));
    CHECK_FALSE(B.inside({2.5 + 1e-6, -2.0}, kTol));

    Vector n = *B.nearest({4.0, -2.0});
    CHECK(vdist(n, {2.5, -2.0}) < 1e-12);
    CHECK(vdist(*B.nearest({1.0, -2.0}), {1.0, -2.0}) < 1e-12);

    auto s = *B.support({0.0, 1.0});
    CHECK(s.value == doctest::Approx(-2.0 + 1.5));
    CHECK(vdist(s.point, {1.0, -0.5}) < 1e-12);

    CHECK(B.outside_margin({4.0, -2.0}, kTol) == doctest::Approx(1.5));
    CHECK(B.outside_margin({1.0, -2.0}, kTol) == 0.0);
}

TEST_CASE("vpolytope segment projection") {
    VPolytope S({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(S.inside({0.5, 0.5}, kTol));
    CHECK_FALSE(S.inside({0.5, 0.6}, 1e-7));
    Vector n = *S.nearest({1.0, 0.0});
    CHECK(vdist(n, {0.5, 0.5}) < 1e-9);
    auto s = *S.support({1.0, 2.0});
    CHECK(s.value == doctest::Approx(3.0));
}

TEST_CASE("hpolytope cube geometry") {
    auto cube = unit_cube_h(3);
    CHECK(cube->inside({1.0, 1.0, 1.0}, kTol));
    CHECK_FALSE(cube->inside({1.0, 1.0, 1.0 + 1e-6}, kTol));

    Vector n = *cube->nearest({2.0, 0.0, 0.0});
    CHECK(vdist(n, {1.0, 0.0, 0.0}) < 1e-9);
    // rows are normalized, so the slack margin is the plain distance here
    CHECK(cube->outside_margin({2.0, 0.0, 0.0}, kTol) == doctest::Approx(1.0));

    auto s = *cube->support({1.0, 1.0, 1.0});
    CHECK(s.value == doctest::Approx(3.0));
    CHECK(vdist(s.point, {1.0, 1.0, 1.0}) < 1e-9);
}

TEST_CASE("cube agrees between vertex and halfspace forms") {
    auto hv = unit_cube_h(3);
    auto vv = unit_cube_v();
    Rng rng(21);
    for (int i = 0; i < 120; ++i) {
        Vector p = rng.in_box({-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5});
        double m = hv->outside_margin(p, kTol);
        if (m < 1e-6) continue;  // skip the tolerance band at the surface
        CHECK(hv->inside(p, kTol) == vv->inside(p, 1e-7));
        Vector nh = *hv->nearest(p);
        Vector nv = *vv->nearest(p);
        CHECK(vdist(nh, nv) < 1e-6);
    }
    for (int i = 0; i < 40; ++i) {
        Vector d = rng.unit_vector(3);
        CHECK(hv->support(d)->value ==
              doctest::Approx(vv->support(d)->value).epsilon(1e-9));
    }
}

TEST_CASE("zonotope unit square") {
    Zonotope Z({0.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(Z.inside({0.0, 0.0}, kTol));
    CHECK(Z.inside({1.0, 1.0}, kTol));
    CHECK_FALSE(Z.inside({-0.1, 0.5}, 1e-7));
    Vector n = *Z.nearest({2.0, 0.5});
    CHECK(vdist(n, {1.0, 0.5}) < 1e-7);
    auto s = *Z.support({1.0, 1.0});
    CHECK(s.value == doctest::Approx(2.0));
    CHECK(vdist(s.point, {1.0, 1.0}) < 1e-12);
}

TEST_CASE("zonotope face decomposition") {
    Zonotope Z({0.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}});
    ZonotopeFace f = face_decompose_zonotope(Z, {1.0, 0.0});
    // +x face: only the pure-y generator is orthogonal to the direction,
    // the saturating generators sum into the offset
    CHECK(f.face_part.generators().size() == 1);
    CHECK(f.rest_part.generators().size() == 2);
    CHECK(vdist(f.offset, {1.5, 0.5}) < 1e-12);
    CHECK(Z.support({1.0, 0.0})->value == doctest::Approx(1.5));
    // every face point is support-optimal
    Vector face_pt = vadd(f.offset, f.face_part.generators()[0]);
    CHECK(face_pt[0] == doctest::Approx(1.5));
    CHECK(Z.inside(face_pt, 1e-9));
}

TEST_CASE("ellipsoid with distinct semi-axes") {
    Matrix M(2, 2);
    M(0, 0) = 0.25;  // semi-axis 2 along x
    M(1, 1) = 1.0;   // semi-axis 1 along y
    Ellipsoid E({0.0, 0.0}, M);
    CHECK(E.inside({2.0, 0.0}, kTol));
    CHECK_FALSE(E.inside({2.0 + 1e-5, 0.0}, kTol));
    CHECK(E.inside({0.0, 1.0}, kTol));
    CHECK_FALSE(E.inside({1.9, 0.4}, kTol));

    Vector n = *E.nearest({3.0, 0.0});
    CHECK(vdist(n, {2.0, 0.0}) < 1e-7);
    auto s = *E.support({1.0, 0.0});
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("psd cap slab") {
    PSDCap2 P;
    // coordinates (x, y, z) stand for [[x, y], [y, z]]
    CHECK(P.inside({0.5, 0.0, 0.5}, kTol));
    CHECK(P.inside({1.0, 0.0, 1.0}, kTol));          // X = I
    CHECK(P.inside({0.5, 0.5, 0.5}, kTol));          // rank-1 corner
    CHECK_FALSE(P.inside({0.0, 0.5, 0.5}, kTol));    // det < 0
    CHECK_FALSE(P.inside({1.1, 0.0, 0.5}, kTol));    // exceeds the cap
    CHECK_FALSE(P.inside({0.5, 0.0, -0.1}, kTol));

    Vector n = *P.nearest({2.0, 0.0, 0.0});
    CHECK(vdist(n, {1.0, 0.0, 0.0}) < 1e-7);
    // projection is idempotent
    Vector nn = *P.nearest(n);
    CHECK(vdist(nn, n) < 1e-9);
}

TEST_CASE("reciprocal epigraph slab") {
    Epigraph19 E;
    CHECK(E.lower_z(0.5, 0.0) == doctest::Approx(2.0));
    CHECK(E.lower_z(0.25, 0.5) == doctest::Approx(0.5));
    CHECK(E.lower_z(2.0, 1.5) == 0.0);
    CHECK(std::isinf(E.lower_z(0.0, 0.5)));

    CHECK(E.inside({0.5, 0.0, 2.0}, kTol));
    CHECK_FALSE(E.inside({0.5, 0.0, 1.9}, kTol));
    CHECK(E.inside({0.0, 1.0, 0.0}, kTol));   // the cusp column
    CHECK_FALSE(E.inside({0.0, 0.5, 5.0}, kTol));
    CHECK_FALSE(E.inside({0.6, 0.6, 9.0}, kTol));  // x + y > 1

    CHECK_FALSE(E.is_bounded());
    Vector n = *E.nearest({0.5, 0.0, 1.0});
    CHECK(E.inside(n, 1e-6));

    ExtentInterval ext = line_extent(E, {0.5, 0.0, 2.0}, {0.0, 0.0, 1.0},
                                     1e3, kTol);
    CHECK(ext.clipped_hi);
    CHECK(ext.hi > 900.0);
    CHECK(ext.lo > -1e-6);
}

TEST_CASE("circular cone") {
    CircularCone C(10.0, -10.0, 1.0);
    CHECK(C.radius_at(0.0) == doctest::Approx(0.5));
    CHECK(C.radius_at(10.0) == doctest::Approx(0.0));
    CHECK(C.radius_at(-10.0) == doctest::Approx(1.0));

    CHECK(C.inside({0.5, 0.0, 0.0}, kTol));
    CHECK_FALSE(C.inside({0.5 + 1e-5, 0.0, 0.0}, kTol));
    CHECK(C.inside({0.0, 0.0, 10.0}, kTol));
    CHECK_FALSE(C.inside({0.0, 0.0, 10.1}, kTol));
    CHECK_FALSE(C.inside({0.0, 0.0, -10.1}, kTol));

    Vector n = *C.nearest({2.0, 0.0, -10.0});
    CHECK(vdist(n, {1.0, 0.0, -10.0}) < 1e-7);
    auto s = *C.support({0.0, 0.0, 1.0});
    CHECK(s.value == doctest::Approx(10.0));
}

TEST_CASE("suspension of the tangent disk") {
    auto disk = std::make_shared<Ball>(Vector{1.0, 0.0}, 1.0);
    Suspension S(disk);
    CHECK(S.dim() == 3);
    CHECK(S.inside({0.0, 0.0, 0.0}, kTol));   // apex
    CHECK(S.inside({0.0, 0.0, 1.0}, kTol));   // rim of the top slice
    CHECK(S.inside({0.5, 0.0, 0.5}, kTol));   // center of the mid slice
    CHECK(S.inside({2.0, 0.0, 1.0}, kTol));
    CHECK_FALSE(S.inside({0.0, 0.1, 0.0}, kTol));
    CHECK_FALSE(S.inside({2.0, 0.0, 0.9}, kTol));  // head outside the 0.9 slice

    Vector n = *S.nearest({0.0, 0.0, 2.0});
    CHECK(vdist(n, {0.0, 0.0, 1.0}) < 1e-6);

    BoundingBox b = S.bounding_box();
    REQUIRE(b.lo.size() == 3);
    CHECK(b.lo[2] == 0.0);
    CHECK(b.hi[2] == 1.0);
    CHECK(b.hi[0] == doctest::Approx(2.0));
}

TEST_CASE("intersection projects through the single active constraint") {
    auto cube = unit_cube_h(3);
    auto ball = std::make_shared<Ball>(Vector{0.0, 0.0, 0.0}, 1.2);
    Intersection I(cube, ball);
    CHECK(I.inside({0.0, 0.0, 0.0}, kTol));
    CHECK(I.inside({1.0, 0.0, 0.0}, kTol));
    CHECK_FALSE(I.inside({1.0, 1.0, 1.0}, kTol));  // outside the ball
    Vector n = *I.nearest({2.0, 0.0, 0.0});
    CHECK(vdist(n, {1.0, 0.0, 0.0}) < 1e-6);
}

TEST_CASE("product splits coordinates") {
    auto square = unit_cube_h(2);
    // interval [0, 1] as a one dimensional halfspace body
    Matrix A(2, 1);
    A(0, 0) = 1.0;
    A(1, 0) = -1.0;
    auto seg2 = std::make_shared<HPolytope>(A, Vector{1.0, 0.0}, Vector{0.5});
    Product P(square, seg2);
    CHECK(P.dim() == 3);
    CHECK(P.inside({0.5, -0.5, 0.5}, kTol));
    CHECK_FALSE(P.inside({0.5, -0.5, -0.5}, kTol));  // interval is [0, 1]
    auto s = *P.support({1.0, 0.0, 1.0});
    CHECK(s.value == doctest::Approx(2.0));
    Vector n = *P.nearest({2.0, 0.0, 0.5});
    CHECK(vdist(n, {1.0, 0.0, 0.5}) < 1e-7);
}

TEST_CASE("translate shifts every oracle") {
    auto ball = std::make_shared<Ball>(Vector{0.0, 0.0}, 1.0);
    Translate T(ball, {5.0, 0.0});
    CHECK(T.inside({5.5, 0.0}, kTol));
    CHECK_FALSE(T.inside({0.0, 0.0}, kTol));
    Vector n = *T.nearest({7.0, 0.0});
    CHECK(vdist(n, {6.0, 0.0}) < 1e-12);
    CHECK(T.support({1.0, 0.0})->value == doctest::Approx(6.0));
    BoundingBox b = T.bounding_box();
    CHECK(b.lo[0] == doctest::Approx(4.0));
    CHECK(b.hi[0] == doctest::Approx(6.0));
}

TEST_CASE("bounding boxes and clipped half diagonal") {
    Ball B({0.0, 0.0, 0.0}, 1.0);
    BoundingBox b = B.bounding_box();
    CHECK(b.bounded());
    CHECK(b.half_diagonal() == doctest::Approx(std::sqrt(3.0)));

    Epigraph19 E;
    BoundingBox eb = E.bounding_box();
    CHECK_FALSE(eb.bounded());
    double hd = eb.half_diagonal(1e3);
    CHECK(std::isfinite(hd));
    CHECK(hd <= vnorm({0.5, 0.5, 1e3}) + 1.0);
}

TEST_CASE("line extent of a ball is the radius") {
    Ball B({0.0, 0.0}, 1.0);
    ExtentInterval e = line_extent(B, {0.0, 0.0}, {1.0, 0.0}, 1e3, kTol);
    CHECK_FALSE(e.clipped_lo);
    CHECK_FALSE(e.clipped_hi);
    CHECK(e.hi == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(e.lo == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("affine images") {
    // vertex form maps exactly
    auto seg = std::make_shared<VPolytope>(
        std::vector<Vector>{{0.0, 0.0}, {1.0, 1.0}});
    Matrix R(2, 2);
    R(0, 1) = -1.0;
    R(1, 0) = 1.0;  // rotate 90 degrees
    BodyPtr img = affine_image(R, {1.0, 0.0}, seg);
    const auto& vp = static_cast<const VPolytope&>(*img);
    CHECK(vdist(vp.vertices()[0], {1.0, 0.0}) < 1e-12);
    CHECK(vdist(vp.vertices()[1], {0.0, 1.0}) < 1e-12);

    // zonotope generators map exactly, including down a dimension
    auto zono = std::make_shared<Zonotope>(
        Vector{0.0, 0.0}, std::vector<Vector>{{1.0, 0.0}, {0.0, 1.0}});
    Matrix P(1, 2);
    P(0, 0) = 1.0;
    BodyPtr zimg = affine_image(P, {0.0}, zono);
    CHECK(zimg->dim() == 1);
    CHECK(zimg->inside({1.0}, kTol));
    CHECK_FALSE(zimg->inside({2.1}, 1e-7));

    auto cube = unit_cube_h(3);
    CHECK_THROWS_AS(affine_image(Matrix::identity(3), {0.0, 0.0, 0.0}, cube),
                    UnsupportedImage);
}
