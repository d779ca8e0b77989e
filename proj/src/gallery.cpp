#include "lnc/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"
#include "lnc/sections.hpp"

namespace lnc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vector vec(std::initializer_list<double> xs) { return Vector(xs); }

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return std::string(buf);
}

Matrix rows_to_matrix(const std::vector<Vector>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

BodyPtr make_cube3() {
    Matrix a(6, 3);
    Vector b(6, 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
        a(2 * j, j) = 1.0;
        a(2 * j + 1, j) = -1.0;
    }
    return std::make_shared<HPolytope>(a, b, Vector(3, 0.0));
}

BodyPtr make_example13() {
    auto cone = std::make_shared<CircularCone>(10.0, -10.0, 1.0);
    Matrix seg_a(2, 1);
    seg_a(0, 0) = 1.0;
    seg_a(1, 0) = -1.0;
    Vector seg_b{1.0, 0.0};
    auto seg = std::make_shared<HPolytope>(seg_a, seg_b, Vector{0.5});
    auto prod = std::make_shared<Product>(cone, seg);
    auto ball = std::make_shared<Ball>(Vector(4, 0.0), 2.0);
    return std::make_shared<Intersection>(prod, ball);
}

BodyPtr make_helix(int n) {
    if (n < 4) throw std::invalid_argument("helix10: need at least 4 vertices");
    std::vector<Vector> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * kPi * k / (n - 1);
        verts.push_back(vec({std::cos(t), std::sin(t), t}));
    }
    return std::make_shared<VPolytope>(std::move(verts));
}

BodyPtr make_zono4() {
    std::vector<Vector> gens = {
        vec({1.0, 0.0, 0.0, 0.0}),  vec({0.0, 1.0, 0.0, 0.0}),
        vec({0.0, 0.0, 1.0, 0.0}),  vec({0.0, 0.0, 0.0, 1.0}),
        vec({0.5, 0.5, 0.0, 0.0}),  vec({0.0, 0.0, 0.5, -0.5}),
    };
    return std::make_shared<Zonotope>(Vector(4, 0.0), std::move(gens));
}

LinearMap proj_xy3() {
    Matrix m(2, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return LinearMap(m);
}

// 2x2 symmetric matrix helpers for the psd12 template, in (a, b, c) coords
// for [[a, b], [b, c]].
double sym_det(const Vector& x) { return x[0] * x[2] - x[1] * x[1]; }
double sym_det_cap(const Vector& x) {
    return (1.0 - x[0]) * (1.0 - x[2]) - x[1] * x[1];
}

struct TemplateChecker {
    const BodyPtr Q;
    const ToolConfig& cfg;
    std::vector<std::string>* notes;
    bool ok = true;

    void note(bool pass, const std::string& line) {
        ok = ok && pass;
        if (notes) notes->push_back((pass ? "ok   " : "FAIL ") + line);
    }

    void check_inside(const Vector& p, const char* label) {
        bool in = Q->membership(p, cfg.membership_tol) == Membership::INSIDE;
        note(in, std::string(label) + " inside body");
    }

    // Exact margin law: the reported distance outside along +v matches an
    // independent closed form across the whole dyadic grid.
    void check_margin_law(const Vector& q, const Vector& v,
                          const std::function<double(const Vector&)>& expect,
                          double tol, const char* label) {
        double worst = 0.0;
        for (int k = 1; k <= 12; ++k) {
            double eps = std::ldexp(1.0, -k);
            Vector p = q;
            vaxpy(eps, v, p);
            double m = Q->outside_margin(p, cfg.membership_tol);
            worst = std::max(worst, std::abs(m - expect(p)));
        }
        note(worst <= tol,
             std::string(label) + fmt(" margin law, max dev %.3g", worst));
    }

    void check_shift_outside(const Vector& q, const Vector& v,
                             const char* label) {
        Vector p = q;
        vaxpy(-0.5, v, p);
        double m = Q->outside_margin(p, cfg.membership_tol);
        note(m >= cfg.witness_margin,
             std::string(label) + fmt(" midpoint shift outside, margin %.3g", m));
    }
};

bool verify_suspension_template(const std::string& id, const ToolConfig& cfg,
                                std::vector<std::string>* notes) {
    WitnessTemplate tpl = gallery_witness_template(id);
    TemplateChecker tc{gallery_body(id), cfg, notes};
    tc.check_inside(tpl.x, "x");
    tc.check_inside(tpl.x_prime, "x'");
    Vector v = vsub(tpl.x, tpl.x_prime);
    Vector mid = vscale(0.5, vadd(tpl.x, tpl.x_prime));
    // Probes leave through the head disk of the suspension, so the distance
    // back is set by that disk alone: vertical drop onto it when the shifted
    // point stays over the disk, slant onto its rim circle otherwise.
    const double cx = id == "cone9" ? 1.0 : 0.0;
    auto head_distance = [cx](const Vector& p) {
        double rp = std::hypot(p[0] - cx, p[1]);
        return std::hypot(std::max(rp - 1.0, 0.0), p[2] - 1.0);
    };
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tpl.approach.size(); ++i) {
        const Vector& q = tpl.approach[i];
        std::string label = "q[" + std::to_string(i) + "]";
        tc.check_inside(q, label.c_str());
        tc.check_margin_law(q, v, head_distance, 5.0e-7, label.c_str());
        tc.check_shift_outside(q, v, label.c_str());
        double d = vdist(q, mid);
        tc.note(d < prev, label + " strictly closer to midpoint");
        prev = d;
    }
    return tc.ok;
}

bool verify_psd12_template(const ToolConfig& cfg,
                           std::vector<std::string>* notes) {
    WitnessTemplate tpl = gallery_witness_template("psd12");
    TemplateChecker tc{gallery_body("psd12"), cfg, notes};
    tc.check_inside(tpl.x, "x");
    tc.check_inside(tpl.x_prime, "x'");
    Vector v = vsub(tpl.x, tpl.x_prime);
    const double ts[] = {0.9, 0.99, 0.999};
    for (std::size_t i = 0; i < tpl.approach.size(); ++i) {
        const Vector& q = tpl.approach[i];
        double t = ts[i];
        std::string label = "q[" + std::to_string(i) + "]";
        tc.check_inside(q, label.c_str());
        // The curve is rank-one with unit trace: both cone and cap are tight.
        tc.note(std::abs(sym_det(q)) <= 1e-12, label + " det exactly zero");
        tc.note(std::abs(q[0] + q[2] - 1.0) <= 1e-12, label + " unit trace");
        // Exact determinant laws along +/- v: the cap side loses
        // det(I - X) = -eps*t, the cone side loses det(X) = -eps*(1 - t).
        double worst_up = 0.0, worst_dn = 0.0;
        for (int k = 1; k <= 12; ++k) {
            double eps = std::ldexp(1.0, -k);
            Vector up = q, dn = q;
            vaxpy(eps, v, up);
            vaxpy(-eps, v, dn);
            worst_up = std::max(worst_up, std::abs(sym_det_cap(up) + eps * t));
            worst_dn =
                std::max(worst_dn, std::abs(sym_det(dn) + eps * (1.0 - t)));
            bool both_out =
                tc.Q->membership(up, cfg.membership_tol) ==
                    Membership::OUTSIDE &&
                tc.Q->membership(dn, cfg.membership_tol) == Membership::OUTSIDE;
            tc.note(both_out,
                    label + fmt(" eps %.6g leaves on both sides", eps, 0.0));
        }
        tc.note(worst_up <= 1e-12,
                label + fmt(" cap determinant law, max dev %.3g", worst_up));
        tc.note(worst_dn <= 1e-12,
                label + fmt(" cone determinant law, max dev %.3g", worst_dn));
        // Midpoint shift lands strictly on the infeasible side:
        // det(X(q - v/2)) = (t - 1)/2 <= -5e-4, tight at t = 0.999.
        Vector sh = q;
        vaxpy(-0.5, v, sh);
        double d = sym_det(sh);
        tc.note(std::abs(d - (t - 1.0) / 2.0) <= 1e-12,
                label + fmt(" shift determinant %.6g matches (t-1)/2", d));
        tc.note(d <= -5e-4 + 1e-12, label + " shift determinant <= -5e-4");
    }
    return tc.ok;
}

}  // namespace

const std::vector<GalleryEntry>& gallery_entries() {
    static const std::vector<GalleryEntry> entries = {
        {"ball3", "euclidean ball in R^3, center off the origin",
         "LNC_NO_WITNESS", false, false, 0},
        {"cone9",
         "suspension of a disk tangent to the axis; fails along the tangent "
         "ruling",
         "NOT_LNC_WITNESS", true, false, 0},
        {"cube3", "axis box [-1,1]^3 as an H-polytope", "LNC_NO_WITNESS",
         false, false, 0},
        {"epigraph19",
         "closed epigraph with a cusp ray; sections jump but no pair fails",
         "LNC_NO_WITNESS", false, false, 0},
        {"example13",
         "circular cone times an interval, clipped by a ball; fails on a "
         "lateral flat",
         "NOT_LNC_WITNESS", false, false, 0},
        {"helix10",
         "convex hull of a helix sample; section jump persists as the sample "
         "grows",
         "LIMIT_FAMILY", false, true, 0},
        {"prop11", "suspension of the centered unit disk", "NOT_LNC_WITNESS", true,
         false, 0},
        {"psd12", "2x2 symmetric matrices with 0 <= X <= I, slice coords",
         "NOT_LNC_WITNESS", true, false, 0},
        {"zono4", "zonotope in R^4 spanned by six generators",
         "LNC_NO_WITNESS", false, false, 0},
    };
    return entries;
}

const GalleryEntry* gallery_find(const std::string& id) {
    for (const auto& e : gallery_entries())
        if (e.id == id) return &e;
    return nullptr;
}

BodyPtr gallery_body(const std::string& id, int param) {
    if (id == "ball3")
        return std::make_shared<Ball>(vec({0.2, -0.1, 0.3}), 1.0);
    if (id == "cone9")
        return std::make_shared<Suspension>(
            std::make_shared<Ball>(vec({1.0, 0.0}), 1.0));
    if (id == "cube3") return make_cube3();
    if (id == "epigraph19") return std::make_shared<Epigraph19>();
    if (id == "example13") return make_example13();
    if (id == "helix10") return make_helix(param > 0 ? param : 128);
    if (id == "prop11")
        return std::make_shared<Suspension>(
            std::make_shared<Ball>(Vector(2, 0.0), 1.0));
    if (id == "psd12") return std::make_shared<PSDCap2>();
    if (id == "zono4") return make_zono4();
    throw std::invalid_argument("unknown gallery id: " + id);
}

LinearMap gallery_map(const std::string& id) {
    if (id == "ball3" || id == "cone9" || id == "cube3" || id == "helix10" ||
        id == "prop11")
        return proj_xy3();
    if (id == "epigraph19") {
        Matrix m(1, 3);
        m(0, 0) = 1.0;
        return LinearMap(m);
    }
    if (id == "psd12") {
        Matrix m(2, 3);
        m(0, 1) = 1.0;
        m(1, 2) = 1.0;
        return LinearMap(m);
    }
    if (id == "zono4") {
        Matrix m(2, 4);
        m(0, 0) = 1.0;
        m(0, 2) = 0.5;
        m(1, 1) = 1.0;
        m(1, 3) = -0.5;
        return LinearMap(m);
    }
    if (id == "example13") {
        // Quotient by the ruling direction the failing flat lies along.
        return quotient_map(vunit(vec({1.0, 0.0, -20.0, 0.0})));
    }
    throw std::invalid_argument("unknown gallery id: " + id);
}

WitnessTemplate gallery_witness_template(const std::string& id) {
    WitnessTemplate tpl;
    if (id == "cone9") {
        tpl.x = vec({0.0, 0.0, 1.0});
        tpl.x_prime = vec({0.0, 0.0, 0.0});
        for (int n : {2, 4, 8, 16}) {
            double a = 1.0 / n;
            tpl.approach.push_back(
                vec({1.0 - std::cos(a), std::sin(a), 1.0}));
        }
        return tpl;
    }
    if (id == "prop11") {
        tpl.x = vec({1.0, 0.0, 1.0});
        tpl.x_prime = vec({0.0, 0.0, 0.0});
        for (int n : {2, 4, 8, 16}) {
            double a = 1.0 / n;
            tpl.approach.push_back(vec({std::cos(a), std::sin(a), 1.0}));
        }
        return tpl;
    }
    if (id == "psd12") {
        tpl.x = vec({1.0, 0.0, 0.0});
        tpl.x_prime = vec({0.0, 0.0, 0.0});
        for (double t : {0.9, 0.99, 0.999}) {
            tpl.approach.push_back(
                vec({t, std::sqrt(t - t * t), 1.0 - t}));
        }
        return tpl;
    }
    throw std::invalid_argument("no witness template for gallery id: " + id);
}

bool verify_witness_template(const std::string& id, const ToolConfig& cfg,
                             std::vector<std::string>* notes) {
    if (id == "cone9" || id == "prop11")
        return verify_suspension_template(id, cfg, notes);
    if (id == "psd12") return verify_psd12_template(cfg, notes);
    throw std::invalid_argument("no witness template for gallery id: " + id);
}

GalleryRun gallery_run(const std::string& id, int param,
                       const ToolConfig& cfg) {
    const GalleryEntry* entry = gallery_find(id);
    if (!entry) throw std::invalid_argument("unknown gallery id: " + id);
    GalleryRun run;
    run.id = id;
    run.expected = entry->expected;
    BodyPtr Q = gallery_body(id, param);

    if (entry->expected == "LIMIT_FAMILY") {
        // Walk the canonical section across the image vertices in sample
        // order; the last step returns to the doubly covered vertex and the
        // lowest selection snaps back to the bottom of its fiber.
        int n = param > 0 ? param : 128;
        SectionSpec spec{Q, gallery_map(id), SectionMethod::GV_LOWEST, {}};
        std::vector<Vector> targets;
        targets.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            double t = 2.0 * kPi * k / (n - 1);
            targets.push_back(vec({std::cos(t), std::sin(t)}));
        }
        ProbeResult pr = probe_continuity(spec, targets, 0, cfg);
        run.max_jump = pr.max_jump;
        if (pr.empty_index) {
            run.got = "EMPTY_FIBER";
            run.notes.push_back("empty fiber at target index " +
                                std::to_string(*pr.empty_index));
        } else {
            run.got = pr.max_jump >= 6.0 ? "LIMIT_FAMILY" : "LNC_NO_WITNESS";
            run.notes.push_back(fmt("max section jump %.6g", pr.max_jump));
        }
        run.match = run.got == run.expected;
        return run;
    }

    ToolConfig scfg = cfg;
    if (entry->pairs_override > 0) scfg.search_pairs = entry->pairs_override;
    run.search = lnc_search(Q, scfg, scfg.seed);
    run.got = run.search.witness_found ? "NOT_LNC_WITNESS" : "LNC_NO_WITNESS";
    if (entry->has_template)
        run.template_ok = verify_witness_template(id, cfg, &run.notes);
    run.match = run.got == run.expected && run.template_ok;
    return run;
}

}  // namespace lnc
