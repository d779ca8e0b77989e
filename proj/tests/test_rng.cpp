#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "lnc/rng.hpp"

using namespace lnc;

TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("child streams ignore parent consumption") {
    Rng a(7);
    Rng c1 = a.child(3);
    for (int i = 0; i < 57; ++i) a.next_u64();  // burn the parent
    Rng c2 = a.child(3);
    for (int i = 0; i < 20; ++i) CHECK(c1.next_u64() == c2.next_u64());

    // distinct indices give distinct streams
    Rng d = a.child(4);
    Rng e = a.child(5);
    CHECK(d.next_u64() != e.next_u64());
}

TEST_CASE("uniform stays in range and has a sane mean") {
    Rng r(11);
    double sum = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / N - 0.5) < 0.02);

    for (int i = 0; i < 1000; ++i) {
        double u = r.uniform(-3.0, -1.0);
        CHECK(u >= -3.0);
        CHECK(u < -1.0);
    }
}

TEST_CASE("index covers the range") {
    Rng r(12);
    bool seen[5] = {false, false, false, false, false};
    for (int i = 0; i < 500; ++i) {
        std::size_t k = r.index(5);
        REQUIRE(k < 5);
        seen[k] = true;
    }
    for (bool s : seen) CHECK(s);
    CHECK(r.index(1) == 0);
}

TEST_CASE("unit vectors have norm one") {
    Rng r(13);
    for (std::size_t dim : {std::size_t(1), std::size_t(2), std::size_t(5)}) {
        for (int i = 0; i < 50; ++i) {
            Vector v = r.unit_vector(dim);
            REQUIRE(v.size() == dim);
            CHECK(vnorm(v) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("in_box respects bounds") {
    Rng r(14);
    Vector lo{-1.0, 2.0};
    Vector hi{1.0, 2.5};
    for (int i = 0; i < 200; ++i) {
        Vector p = r.in_box(lo, hi);
        REQUIRE(p.size() == 2);
        CHECK(p[0] >= -1.0);
        CHECK(p[0] < 1.0);
        CHECK(p[1] >= 2.0);
        CHECK(p[1] < 2.5);
    }
}

TEST_CASE("normal has a roughly standard spread") {
    Rng r(15);
    double sum = 0.0, sq = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        double z = r.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / N) < 0.05);
    CHECK(std::abs(sq / N - 1.0) < 0.05);
}
