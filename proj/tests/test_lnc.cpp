#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"
#include "lnc/gallery.hpp"
#include "lnc/lnc_analysis.hpp"

using namespace lnc;

namespace {

// Re-derive every claim the witness record makes, using only the body's
// own membership oracles. Catches a search that records stale margins.
void check_witness(const BodyPtr& Q, const SearchReport& rep,
                   const ToolConfig& cfg) {
    REQUIRE(rep.witness.has_value());
    const LncWitness& w = *rep.witness;
    CHECK(Q->inside(w.x, cfg.membership_tol));
    CHECK(Q->inside(w.x_prime, cfg.membership_tol));
    CHECK(vdist(w.v, vsub(w.x, w.x_prime)) < 1e-12);
    CHECK(vdist(w.midpoint, vscale(0.5, vadd(w.x, w.x_prime))) < 1e-12);

    REQUIRE(w.approach.size() == rep.scales.size());
    REQUIRE(rep.floors.size() == rep.scales.size());
    double last = 1e300;
    for (std::size_t j = 0; j < w.approach.size(); ++j) {
        const ApproachPoint& ap = w.approach[j];
        CHECK(Q->inside(ap.q, cfg.membership_tol));
        CHECK(ap.dist_to_mid < last);
        last = ap.dist_to_mid;
        CHECK(ap.dist_to_mid ==
              doctest::Approx(vdist(ap.q, w.midpoint)).epsilon(1e-9));

        REQUIRE(ap.probes.size() >= std::size_t(kPrefixRequired));
        double floor = rep.floors[j];
        double eps = 0.5;
        for (const EpsProbe& pr : ap.probes) {
            CHECK(pr.eps == doctest::Approx(eps).epsilon(1e-12));
            Vector up = ap.q;
            vaxpy(pr.eps, w.v, up);
            Vector dn = ap.q;
            vaxpy(-pr.eps, w.v, dn);
            double mu = Q->outside_margin(up, cfg.membership_tol);
            double md = Q->outside_margin(dn, cfg.membership_tol);
            CHECK(mu >= floor * 0.99);
            CHECK(md >= floor * 0.99);
            // the recorded margins reproduce
            CHECK(std::abs(mu - pr.margin_plus) <= 1e-12 + 1e-6 * mu);
            CHECK(std::abs(md - pr.margin_minus) <= 1e-12 + 1e-6 * md);
            eps *= 0.5;
        }
    }
}

}  // namespace

TEST_CASE("search falsifies the tangent-disk suspension") {
    ToolConfig cfg;
    auto rep = lnc_search(gallery_body("cone9"), cfg, cfg.seed);
    REQUIRE(rep.witness_found);
    check_witness(gallery_body("cone9"), rep, cfg);
    CHECK(rep.stats.confirmed >= 1);
    CHECK(rep.scales.size() >=
          std::size_t(cfg.search_scales + kConfirmScales));
    CHECK(rep.floors.back() == doctest::Approx(kConfirmFloor));
    // The cascade must have descended to a pair-negligible radius or the
    // tolerance horizon, whichever is coarser.
    CHECK(rep.scales.back() <=
          std::max(kConfirmScaleFloor * (1.0 + vnorm(rep.witness->v)),
                   30.0 * std::sqrt(cfg.membership_tol)));
}

TEST_CASE("search falsifies the psd slab") {
    ToolConfig cfg;
    cfg.search_pairs = 500;
    auto Q = gallery_body("psd12");
    auto rep = lnc_search(Q, cfg, 1);
    REQUIRE(rep.witness_found);
    check_witness(Q, rep, cfg);
}

TEST_CASE("search stays quiet on round and boxy bodies") {
    ToolConfig cfg;
    CHECK_FALSE(lnc_search(gallery_body("ball3"), cfg, cfg.seed).witness_found);
    CHECK_FALSE(lnc_search(gallery_body("cube3"), cfg, cfg.seed).witness_found);

    ToolConfig small = cfg;
    small.search_pairs = 60;
    CHECK_FALSE(
        lnc_search(gallery_body("epigraph19"), small, cfg.seed).witness_found);
}

TEST_CASE("search is deterministic in the seed") {
    ToolConfig cfg;
    cfg.search_pairs = 80;
    auto Q = gallery_body("cone9");
    auto a = lnc_search(Q, cfg, 7);
    auto b = lnc_search(Q, cfg, 7);
    REQUIRE(a.witness_found == b.witness_found);
    if (a.witness_found) {
        CHECK(a.witness->x == b.witness->x);
        CHECK(a.witness->x_prime == b.witness->x_prime);
        CHECK(a.witness->pair_index == b.witness->pair_index);
        REQUIRE(a.witness->approach.size() == b.witness->approach.size());
        for (std::size_t i = 0; i < a.witness->approach.size(); ++i)
            CHECK(a.witness->approach[i].q == b.witness->approach[i].q);
    }
    CHECK(a.stats.pairs == b.stats.pairs);
    CHECK(a.stats.triggered == b.stats.triggered);
}

TEST_CASE("report geometry fields are coherent") {
    ToolConfig cfg;
    cfg.search_pairs = 40;
    auto rep = lnc_search(gallery_body("ball3"), cfg, 3);
    CHECK(rep.scale_base > 0.0);
    REQUIRE(rep.scales.size() == std::size_t(cfg.search_scales + kConfirmScales));
    for (std::size_t i = 1; i < rep.scales.size(); ++i)
        CHECK(rep.scales[i] < rep.scales[i - 1]);
    for (std::size_t i = 0; i < rep.floors.size(); ++i) {
        std::size_t primary = std::size_t(cfg.search_scales);
        if (i < primary)
            CHECK(rep.floors[i] == doctest::Approx(cfg.witness_margin));
        else
            CHECK(rep.floors[i] == doctest::Approx(kConfirmFloor));
    }
    CHECK(rep.stats.pairs == 40);
}
