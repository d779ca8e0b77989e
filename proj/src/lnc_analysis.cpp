#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lnc/lnc_analysis.hpp"
#include "lnc/rng.hpp"
#include "lnc/solvers.hpp"

namespace lnc {
namespace {

struct CandidatePair {
    Vector x;
    Vector xp;
    std::string mode;
};

// One triggering approach candidate at one scale.
struct Trigger {
    Vector q;
    double dist;
    std::vector<EpsProbe> probes;
};

Vector move(const Vector& x, double t, const Vector& u) {
    Vector out = x;
    vaxpy(t, u, out);
    return out;
}

Vector midpoint_of(const Vector& a, const Vector& b) {
    Vector m = vadd(a, b);
    return vscale(0.5, m);
}

bool sample_inside(const Body& Q, Rng& rng, const Vector& lo, const Vector& hi,
                   double tol, Vector* out) {
    for (int t = 0; t < 64; ++t) {
        Vector z = rng.in_box(lo, hi);
        if (Q.inside(z, tol)) {
            *out = z;
            return true;
        }
    }
    return false;
}

// Boundary point hit from outside, together with the outward direction of
// the exterior sample that produced it.
struct BoundaryHit {
    Vector x;
    Vector out_dir;
};

std::optional<BoundaryHit> boundary_point(const Body& Q, const Vector& center,
                                          double R, Rng& rng, double tol) {
    for (int t = 0; t < 8; ++t) {
        Vector u = rng.unit_vector(center.size());
        Vector z = move(center, 1.2 * R, u);
        auto q = Q.nearest(z);
        if (!q || !Q.inside(*q, tol)) continue;
        Vector d = vsub(z, *q);
        double nd = vnorm(d);
        if (nd < 1e-12 * (1.0 + R)) continue;  // sample landed inside
        return BoundaryHit{*q, vscale(1.0 / nd, d)};
    }
    return std::nullopt;
}

// One-sided reach from x along dir; zero when the ray exits immediately or
// x itself fails the membership precondition.
double reach(const Body& Q, const Vector& x, const Vector& dir, double cap,
             double tol) {
    try {
        return line_extent(Q, x, dir, cap, tol).hi;
    } catch (const std::exception&) {
        return 0.0;
    }
}

Vector tangent_part(const Vector& w, const Vector& normal) {
    Vector t = w;
    vaxpy(-vdot(w, normal), normal, t);
    return t;
}

// Longest one-sided boundary ray from x within the tangent hyperplane of the
// outward hint. A long flat reach marks a boundary segment through x.
std::optional<std::pair<Vector, double>> hunt_flat_direction(
    const Body& Q, const Vector& x, const Vector& normal, double cap,
    double tol, Rng& rng) {
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    Vector best_dir;
    double best = 0.0;
    if (n == 3) {
        // Orthonormal tangent frame, then an angle grid with local golden
        // refinement around the best cell.
        Matrix row(1, n);
        for (std::size_t i = 0; i < n; ++i) row.a[0 * n + i] = normal[i];
        LinearMap m(row);
        if (m.kernel.size() < 2) return std::nullopt;
        const Vector t1 = m.kernel[0], t2 = m.kernel[1];
        auto dir_at = [&](double th) {
            Vector d = vscale(std::cos(th), t1);
            vaxpy(std::sin(th), t2, d);
            return d;
        };
        const int grid = 32;
        double best_th = 0.0;
        for (int k = 0; k < grid; ++k) {
            double th = 2.0 * M_PI * k / grid;
            double r = reach(Q, x, dir_at(th), cap, tol);
            if (r > best) {
                best = r;
                best_th = th;
            }
        }
        if (best <= 0.0) return std::nullopt;
        double step = 2.0 * M_PI / grid;
        double th = golden_min(
            [&](double a) { return -reach(Q, x, dir_at(a), cap, tol); },
            best_th - step, best_th + step, 1e-6, 80);
        double r = reach(Q, x, dir_at(th), cap, tol);
        if (r > best) {
            best = r;
            best_th = th;
        }
        best_dir = dir_at(best_th);
    } else {
        // Random tangent directions with two shrinking refinement rounds.
        for (int k = 0; k < 64; ++k) {
            Vector t = tangent_part(rng.unit_vector(n), normal);
            double nt = vnorm(t);
            if (nt < 1e-9) continue;
            t = vscale(1.0 / nt, t);
            double r = reach(Q, x, t, cap, tol);
            if (r > best) {
                best = r;
                best_dir = t;
            }
        }
        if (best <= 0.0) return std::nullopt;
        for (double radius : {0.35, 0.12}) {
            for (int k = 0; k < 16; ++k) {
                Vector t = best_dir;
                vaxpy(radius, tangent_part(rng.unit_vector(n), normal), t);
                double nt = vnorm(t);
                if (nt < 1e-9) continue;
                t = vscale(1.0 / nt, t);
                double r = reach(Q, x, t, cap, tol);
                if (r > best) {
                    best = r;
                    best_dir = t;
                }
            }
        }
    }
    if (best <= 0.0) return std::nullopt;
    // Sparsify: boundary segments of the test bodies tend to be axis-sparse,
    // and dropping stray small components keeps the pair on the flat.
    Vector sparse = best_dir;
    bool changed = false;
    for (auto& c : sparse) {
        if (std::fabs(c) < 0.15 && c != 0.0) {
            c = 0.0;
            changed = true;
        }
    }
    double ns = vnorm(sparse);
    if (changed && ns > 1e-9) {
        sparse = vscale(1.0 / ns, sparse);
        double r = reach(Q, x, sparse, cap, tol);
        if (r >= 0.98 * best) {
            best = r;
            best_dir = sparse;
        }
    }
    return std::make_pair(best_dir, best);
}

std::optional<CandidatePair> sample_pair(const Body& Q, int idx, Rng& rng,
                                         const Vector& lo, const Vector& hi,
                                         double R, const ToolConfig& cfg) {
    const double mtol = cfg.membership_tol;
    const double ltol = std::max(mtol, 1e-7);
    const double cap = std::min(cfg.extent_cap, 4.0 * R);
    const Vector center = midpoint_of(lo, hi);

    auto interior_pair = [&]() -> std::optional<CandidatePair> {
        Vector a, b;
        if (!sample_inside(Q, rng, lo, hi, mtol, &a)) return std::nullopt;
        if (!sample_inside(Q, rng, lo, hi, mtol, &b)) return std::nullopt;
        return CandidatePair{a, b, "interior"};
    };

    if (idx % 2 == 0) return interior_pair();

    if (idx % 4 == 1) {
        auto sa = Q.support(rng.unit_vector(Q.dim()));
        auto sb = Q.support(rng.unit_vector(Q.dim()));
        if (sa && sb) return CandidatePair{sa->point, sb->point, "support"};
        return interior_pair();
    }

    auto hit = boundary_point(Q, center, R, rng, ltol);
    if (!hit) return interior_pair();

    if (idx % 8 == 7) {
        auto flat = hunt_flat_direction(Q, hit->x, hit->out_dir, cap, ltol, rng);
        if (flat && flat->second >= 1.05 * kVGuardFraction * R) {
            Vector xp = move(hit->x, 0.999 * flat->second, flat->first);
            if (Q.inside(xp, ltol))
                return CandidatePair{hit->x, xp, "boundary_line"};
        }
        // fall through to the chord construction
    }

    Vector u2 = rng.unit_vector(Q.dim());
    auto x2 = Q.nearest(move(hit->x, 0.05 * R, u2));
    if (!x2) return interior_pair();
    Vector d = vsub(*x2, hit->x);
    double nd = vnorm(d);
    if (nd < 1e-10 * (1.0 + R)) return interior_pair();
    d = vscale(1.0 / nd, d);
    double r = reach(Q, hit->x, d, cap, ltol);
    if (r <= 0.0) return interior_pair();
    Vector xp = move(hit->x, 0.999 * r, d);
    if (!Q.inside(xp, ltol)) return interior_pair();
    return CandidatePair{hit->x, xp, "chord"};
}

// Maximal dyadic prefix where both shifted probes sit outside by the floor.
// Cost-ordered: memberships first, margins only for confirmed-outside sides.
std::vector<EpsProbe> failing_prefix(const Body& Q, const Vector& q,
                                     const Vector& v, double floor_margin,
                                     int depth, double mtol) {
    std::vector<EpsProbe> out;
    double eps = 0.5;
    for (int level = 1; level <= depth; ++level, eps *= 0.5) {
        Vector plus = move(q, eps, v);
        if (Q.inside(plus, mtol)) break;
        Vector minus = move(q, -eps, v);
        if (Q.inside(minus, mtol)) break;
        double mp = Q.outside_margin(plus, mtol);
        if (mp < floor_margin) break;
        double mm = Q.outside_margin(minus, mtol);
        if (mm < floor_margin) break;
        out.push_back({eps, mp, mm});
    }
    return out;
}

// Scan one pool at one scale. first_only stops at the first trigger, for
// reproduction passes that need existence only.
std::vector<Trigger> scan_pool(const Body& Q, const Vector& anchor,
                               const Vector& mid, const Vector& v,
                               double delta, double floor_margin, int depth,
                               const ToolConfig& cfg, Rng& rng,
                               bool first_only) {
    std::vector<Trigger> out;
    const double mtol = cfg.membership_tol;
    for (int c = 0; c < kCandidatesPerPool; ++c) {
        Vector u = rng.unit_vector(anchor.size());
        Vector raw = move(anchor, delta, u);
        Vector q;
        if (Q.inside(raw, mtol)) {
            q = raw;
        } else {
            auto pq = Q.nearest(raw);
            if (!pq || !Q.inside(*pq, std::max(mtol, 1e-7))) continue;
            q = *pq;
        }
        auto probes = failing_prefix(Q, q, v, floor_margin, depth, mtol);
        if (static_cast<int>(probes.size()) < kPrefixRequired) continue;
        double dist = vdist(q, mid);
        out.push_back({std::move(q), dist, std::move(probes)});
        if (first_only) break;
    }
    return out;
}

// Pick one approach point per scale with strictly decreasing distance to the
// midpoint: largest admissible distance first, so quartered scales always
// leave room below.
std::optional<std::vector<ApproachPoint>> select_chain(
    const std::vector<std::vector<Trigger>>& per_scale,
    const std::vector<double>& deltas) {
    std::vector<ApproachPoint> chain;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < per_scale.size(); ++j) {
        const Trigger* best = nullptr;
        for (const auto& t : per_scale[j]) {
            if (t.dist >= prev) continue;
            if (!best || t.dist > best->dist) best = &t;
        }
        if (!best) return std::nullopt;
        chain.push_back({best->q, deltas[j], best->dist, best->probes});
        prev = best->dist;
    }
    return chain;
}

}  // namespace

SearchReport lnc_search(const BodyPtr& Q, const ToolConfig& cfg,
                        std::uint64_t seed) {
    if (!Q) throw std::invalid_argument("lnc_search: null body");
    const std::size_t n = Q->dim();
    const double mtol = cfg.membership_tol;

    SearchReport rep;
    BoundingBox box = Q->bounding_box();
    double R = box.half_diagonal(cfg.extent_cap);
    if (!(R > 0.0) || !std::isfinite(R)) R = 1.0;

    Vector lo = box.lo, hi = box.hi;
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::max(lo[i], -cfg.extent_cap);
        hi[i] = std::min(hi[i], cfg.extent_cap);
        if (lo[i] > hi[i]) lo[i] = hi[i] = 0.5 * (lo[i] + hi[i]);
    }

    const int primary = std::max(1, cfg.search_scales);
    std::vector<double> deltas, floors;
    double delta = kScaleFraction * R;
    for (int j = 0; j < primary + kConfirmScales; ++j) {
        deltas.push_back(delta);
        floors.push_back(j < primary
                             ? cfg.witness_margin
                             : std::min(kConfirmFloor, cfg.witness_margin));
        delta *= 0.25;
    }
    rep.scale_base = deltas.front();
    rep.scales = deltas;
    rep.floors = floors;

    const int depth = std::max(kPrefixRequired, cfg.eps_grid_depth);
    Rng root(seed);

    for (int idx = 0; idx < cfg.search_pairs; ++idx) {
        Rng pair_rng = root.child(static_cast<std::uint64_t>(idx));
        Rng sampler = pair_rng.child(7);
        auto pr = sample_pair(*Q, idx, sampler, lo, hi, R, cfg);
        if (!pr) continue;
        rep.stats.pairs++;

        Vector v = vsub(pr->x, pr->xp);
        if (vnorm(v) < kVGuardFraction * R) {
            rep.stats.skipped_short++;
            continue;
        }
        Vector mid = midpoint_of(pr->x, pr->xp);

        // Extend the schedule until the radius is negligible for this pair;
        // a genuine approach survives arbitrarily close to the anchor. Stop
        // above the tolerance horizon: quadratic-contact margins fall below
        // the membership slack near sqrt(mtol), where outside-ness of the
        // probes can no longer be resolved.
        std::vector<double> pdeltas = deltas, pfloors = floors;
        const double scale_floor =
            std::max(kConfirmScaleFloor * (1.0 + vnorm(v)),
                     30.0 * std::sqrt(mtol));
        while (pdeltas.back() > scale_floor) {
            pdeltas.push_back(0.25 * pdeltas.back());
            pfloors.push_back(std::min(kConfirmFloor, cfg.witness_margin));
        }

        // Witness midpoints lie on the boundary; skip pairs whose midpoint
        // neighborhood at the coarsest scale is entirely interior.
        Rng pre = pair_rng.child(5);
        bool all_inside = true;
        for (int k = 0; k < 4 && all_inside; ++k) {
            Vector u = pre.unit_vector(n);
            all_inside = Q->inside(move(mid, deltas[0], u), mtol) &&
                         Q->inside(move(mid, -deltas[0], u), mtol);
        }
        if (all_inside) {
            rep.stats.skipped_prescreen++;
            continue;
        }

        // First pass records triggers for both anchor pools over all scales.
        Rng pass0 = pair_rng.child(1000);
        std::vector<std::vector<Trigger>> rec[2];
        bool alive[2] = {true, true};
        for (std::size_t j = 0; j < pdeltas.size(); ++j) {
            for (int pool = 0; pool < 2; ++pool) {
                if (!alive[pool]) continue;
                Rng prng = pass0.child(j * 2 + static_cast<std::size_t>(pool));
                auto trig =
                    scan_pool(*Q, pool == 0 ? pr->x : mid, mid, v, pdeltas[j],
                              pfloors[j], depth, cfg, prng, false);
                if (trig.empty())
                    alive[pool] = false;
                else
                    rec[pool].push_back(std::move(trig));
            }
            if (!alive[0] && !alive[1]) break;
        }
        if (!alive[0] && !alive[1]) continue;
        rep.stats.triggered++;

        for (int pool = 0; pool < 2; ++pool) {
            if (!alive[pool]) continue;
            auto chain = select_chain(rec[pool], pdeltas);
            if (!chain) continue;

            // Independent resampling passes must reproduce a trigger at
            // every scale for the chosen pool.
            bool reproduced = true;
            for (int r = 1; r <= kResamplePasses && reproduced; ++r) {
                Rng pass = pair_rng.child(1000 + static_cast<std::uint64_t>(r));
                for (std::size_t j = 0; j < pdeltas.size(); ++j) {
                    Rng prng =
                        pass.child(j * 2 + static_cast<std::size_t>(pool));
                    auto trig =
                        scan_pool(*Q, pool == 0 ? pr->x : mid, mid, v,
                                  pdeltas[j], pfloors[j], depth, cfg, prng,
                                  true);
                    if (trig.empty()) {
                        reproduced = false;
                        break;
                    }
                }
            }
            if (!reproduced) continue;

            rep.stats.confirmed++;
            LncWitness w;
            w.x = pr->x;
            w.x_prime = pr->xp;
            w.v = v;
            w.midpoint = mid;
            w.approach = std::move(*chain);
            w.pool = pool == 0 ? "point" : "midpoint";
            w.pair_index = idx;
            w.pair_mode = pr->mode;
            rep.witness = std::move(w);
            rep.witness_found = true;
            rep.scales = std::move(pdeltas);
            rep.floors = std::move(pfloors);
            return rep;
        }
    }
    return rep;
}

}  // namespace lnc
