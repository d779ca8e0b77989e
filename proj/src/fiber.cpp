#include <algorithm>
#include <cmath>
#include <limits>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"
#include "lnc/fiber.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

double range_residual(const LinearMap& T, const Vector& y) {
    Vector x = T.preimage_min_norm(y);
    return vdist(T.apply(x), y);
}

// Plain alternating projections Q / affine from a seed. Returns the affine
// side iterate; margin_out gets its distance to Q.
Vector alternate(const Body& Q, const LinearMap& T, const Vector& y,
                 Vector z, int max_iter, double tol, double* margin_out) {
    double margin = kInf;
    for (int it = 0; it < max_iter; ++it) {
        auto q = Q.nearest(z);
        Vector za = affine_project(T, y, *q);
        double move = vdist(za, z);
        z = std::move(za);
        margin = vdist(z, *Q.nearest(z));
        if (margin <= 0.01 * tol || (move <= 1e-14 * (1.0 + vnorm(z)) && it > 2))
            break;
    }
    if (margin_out) *margin_out = margin;
    return z;
}

Fiber fiber_from_point(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                       Vector x) {
    return Fiber{Q, T, y, affine_project(T, y, x)};
}

// Feasible descent toward the fiber plane for when alternating projections
// stall, which happens when the plane touches the body tangentially. Each
// round picks a launch point (staying put, or a kernel side move that
// reopens slack) by how far the pull toward the plane can then travel.
// All moves stay inside the body, so the result needs no reprojection.
Vector fiber_walk(const Body& Q, const LinearMap& T, const Vector& y,
                  Vector q, double cap, double tol, double* resid_out) {
    double rho = vdist(T.apply(q), y);
    for (int round = 0; round < 60 && rho > tol; ++round) {
        Vector pre = T.preimage_min_norm(vsub(T.apply(q), y));
        double tstar = vnorm(pre);
        if (!(tstar > 0.0)) break;
        Vector d = vscale(-1.0 / tstar, pre);
        // Reaching tstar hits the plane exactly; extents are capped there.
        auto pull_len = [&](const Vector& from) -> double {
            if (Q.membership(from, tol) != Membership::INSIDE) return -1.0;
            return std::min(line_extent(Q, from, d, cap, tol).hi, tstar);
        };
        Vector launch = q;
        double len = pull_len(q);
        for (const Vector& n : T.kernel) {
            auto e = line_extent(Q, q, n, cap, tol);
            for (double c : {e.hi, e.lo, 0.5 * (e.lo + e.hi)}) {
                if (c == 0.0) continue;
                Vector cand = q;
                vaxpy(c, n, cand);
                double g = pull_len(cand);
                if (g > len + 1e-15 * tstar) {
                    len = g;
                    launch = std::move(cand);
                }
            }
        }
        if (len <= 1e-18 * (1.0 + tstar)) break;  // no direction helps
        q = std::move(launch);
        Vector cand = q;
        vaxpy(len, d, cand);
        if (Q.membership(cand, tol) != Membership::INSIDE) {
            // Cancellation at a sharp wall can land outside; bisect back.
            double lo = 0.0, hi = len;
            for (int i = 0; i < 48; ++i) {
                double mid = 0.5 * (lo + hi);
                cand = q;
                vaxpy(mid, d, cand);
                (Q.membership(cand, tol) == Membership::INSIDE ? lo : hi) = mid;
            }
            cand = q;
            vaxpy(lo, d, cand);
        }
        q = std::move(cand);
        rho = vdist(T.apply(q), y);
    }
    if (resid_out) *resid_out = rho;
    return q;
}

}  // namespace

Vector affine_project(const LinearMap& T, const Vector& y, const Vector& x) {
    Vector r = vsub(T.apply(x), y);
    Vector corr = T.preimage_min_norm(r);
    return vsub(x, corr);
}

Fiber make_fiber(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                 const ToolConfig& cfg) {
    if (T.cols() != Q->dim() || T.rows() != y.size())
        throw std::invalid_argument("make_fiber: dimension mismatch");
    const double tol = cfg.fiber_tol * (1.0 + vnorm(y));
    if (range_residual(T, y) > tol)
        throw EmptyFiber("target outside the image of the map");
    const std::string k = Q->kind();

    if (k == "hpolytope") {
        const auto& hp = static_cast<const HPolytope&>(*Q);
        const Matrix& A = hp.A();
        const std::size_t m = A.rows, n = A.cols, me = T.rows();
        LinearProgram lp;
        lp.A = Matrix(m + me, n + 1);
        lp.b = hp.b();
        lp.b.insert(lp.b.end(), y.begin(), y.end());
        lp.sense.assign(m, -1);
        lp.sense.insert(lp.sense.end(), me, 0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = A(i, j);
            lp.A(i, n) = 1.0;
        }
        for (std::size_t i = 0; i < me; ++i)
            for (std::size_t j = 0; j < n; ++j) lp.A(m + i, j) = T.A(i, j);
        lp.c.assign(n + 1, 0.0);
        lp.c[n] = -1.0;
        lp.lo.assign(n + 1, -kInf);
        lp.hi.assign(n + 1, kInf);
        lp.hi[n] = 1.0;
        auto r = lp_solve(lp, cfg.solver_max_iter);
        if (r.status != LpStatus::OPTIMAL || r.x[n] < -cfg.fiber_tol)
            throw EmptyFiber("slice of the polytope is empty");
        Vector x(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
        return fiber_from_point(Q, T, y, std::move(x));
    }

    if (k == "vpolytope") {
        const auto& vp = static_cast<const VPolytope&>(*Q);
        const auto& V = vp.vertices();
        const std::size_t kv = V.size(), me = T.rows();
        Matrix A(me + 1, kv);
        Vector b(me + 1);
        for (std::size_t j = 0; j < kv; ++j) {
            Vector tv = T.apply(V[j]);
            for (std::size_t i = 0; i < me; ++i) A(i, j) = tv[i];
            A(me, j) = 1.0;
        }
        for (std::size_t i = 0; i < me; ++i) b[i] = y[i];
        b[me] = 1.0;
        auto f = lp_feasible_point(A, b, cfg.solver_max_iter);
        if (f.infeasibility > tol)
            throw EmptyFiber("slice of the hull is empty");
        Vector x(Q->dim(), 0.0);
        for (std::size_t j = 0; j < kv; ++j) vaxpy(f.x[j], V[j], x);
        return fiber_from_point(Q, T, y, std::move(x));
    }

    if (k == "zonotope") {
        const auto& z = static_cast<const Zonotope&>(*Q);
        const auto& G = z.generators();
        const std::size_t kg = G.size(), me = T.rows();
        Vector rhs = vsub(y, T.apply(z.center()));
        Matrix A(me + kg, 2 * kg);
        Vector b(me + kg);
        for (std::size_t j = 0; j < kg; ++j) {
            Vector tg = T.apply(G[j]);
            for (std::size_t i = 0; i < me; ++i) A(i, j) = tg[i];
            A(me + j, j) = 1.0;
            A(me + j, kg + j) = 1.0;
            b[me + j] = 1.0;
        }
        for (std::size_t i = 0; i < me; ++i) b[i] = rhs[i];
        auto f = lp_feasible_point(A, b, cfg.solver_max_iter);
        if (f.infeasibility > tol)
            throw EmptyFiber("slice of the zonotope is empty");
        Vector x = z.center();
        for (std::size_t j = 0; j < kg; ++j) vaxpy(f.x[j], G[j], x);
        return fiber_from_point(Q, T, y, std::move(x));
    }

    if (k == "translate") {
        const auto& t = static_cast<const Translate&>(*Q);
        Vector yb = vsub(y, T.apply(t.shift()));
        Fiber base = make_fiber(t.base(), T, yb, cfg);
        return Fiber{Q, T, y, vadd(base.point, t.shift())};
    }

    // Oracle path.
    Vector seed = T.preimage_min_norm(y);
    if (!Q->nearest(seed))
        throw std::invalid_argument("make_fiber: body has no projection");
    double margin = kInf;
    Vector z = alternate(*Q, T, y, seed, cfg.solver_max_iter, tol, &margin);
    if (margin > tol) {
        // Second chance from the box center before declaring empty.
        BoundingBox box = Q->bounding_box();
        Vector c(Q->dim());
        for (std::size_t i = 0; i < c.size(); ++i) {
            double lo = std::max(box.lo[i], -cfg.extent_cap);
            double hi = std::min(box.hi[i], cfg.extent_cap);
            c[i] = 0.5 * (lo + hi);
        }
        double m2 = kInf;
        Vector z2 = alternate(*Q, T, y, affine_project(T, y, c),
                              cfg.solver_max_iter, tol, &m2);
        if (m2 < margin) {
            z = std::move(z2);
            margin = m2;
        }
    }
    // nearest() may be heuristic; the accept test is exact membership, not
    // the distance the projector reports.
    if (margin > tol || Q->membership(z, tol) != Membership::INSIDE) {
        // Tangent fibers stall the projections; walk inside the body instead.
        // The walk's point is kept verbatim: reprojecting onto the plane
        // could leave the body again at a tangency.
        for (const Vector& start : {z, seed}) {
            auto q0 = Q->nearest(start);
            if (!q0 || Q->membership(*q0, tol) != Membership::INSIDE) continue;
            double resid = kInf;
            try {
                Vector qw = fiber_walk(*Q, T, y, *q0, cfg.extent_cap, tol,
                                       &resid);
                if (resid <= tol &&
                    Q->membership(qw, tol) == Membership::INSIDE)
                    return Fiber{Q, T, y, std::move(qw)};
            } catch (const std::exception&) {
                // extent from a marginal base point; try the next start
            }
        }
        throw EmptyFiber("no point of the body maps to target");
    }
    return Fiber{Q, T, y, std::move(z)};
}

bool fiber_feasible_hint(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                         int max_iter, double tol) {
    const double scaled = tol * (1.0 + vnorm(y));
    if (range_residual(T, y) > scaled) return false;
    const std::string k = Q->kind();
    if (k == "hpolytope" || k == "vpolytope" || k == "zonotope" ||
        k == "translate") {
        try {
            ToolConfig cfg;
            cfg.fiber_tol = tol;
            cfg.solver_max_iter = std::max(200, max_iter);
            make_fiber(Q, T, y, cfg);
            return true;
        } catch (const EmptyFiber&) {
            return false;
        }
    }
    Vector seed = T.preimage_min_norm(y);
    if (!Q->nearest(seed)) return false;
    double margin = kInf;
    alternate(*Q, T, y, seed, max_iter, scaled, &margin);
    return margin <= scaled;
}

Vector min_norm_over_fiber(const Fiber& F, const Vector& anchor,
                           const ToolConfig& cfg) {
    const std::size_t k = F.kernel_dim();
    const double ftol = 2.0 * cfg.fiber_tol * (1.0 + vnorm(F.target));
    if (k == 0) return F.point;
    if (k == 1) {
        const Vector& n = F.map.kernel[0];
        auto ext = line_extent(*F.body, F.point, n, cfg.extent_cap, ftol);
        double a = vdot(n, vsub(anchor, F.point));
        a = std::min(std::max(a, ext.lo), ext.hi);
        Vector out = F.point;
        vaxpy(a, n, out);
        return out;
    }
    if (F.body->kind() == "hpolytope") {
        const auto& hp = static_cast<const HPolytope&>(*F.body);
        const Matrix& A = hp.A();
        const std::size_t m = A.rows;
        Matrix AN(m, k);
        Vector Ax = A.apply(F.point);
        Vector rhs(m);
        for (std::size_t i = 0; i < m; ++i)
            rhs[i] = std::max(hp.b()[i] - Ax[i], 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            Vector Anj = A.apply(F.map.kernel[j]);
            for (std::size_t i = 0; i < m; ++i) AN(i, j) = Anj[i];
        }
        Vector c(k);
        Vector diff = vsub(anchor, F.point);
        for (std::size_t j = 0; j < k; ++j) c[j] = vdot(F.map.kernel[j], diff);
        Vector s = project_onto_hpolytope(AN, rhs, c, vzero(k),
                                          cfg.solver_max_iter);
        Vector out = F.point;
        for (std::size_t j = 0; j < k; ++j) vaxpy(s[j], F.map.kernel[j], out);
        return out;
    }
    // Oracle path: Dykstra between Q and the affine set, then a cyclic
    // 1-D polish along kernel directions.
    const BodyPtr Q = F.body;
    const LinearMap& T = F.map;
    const Vector& y = F.target;
    std::vector<Projector> sets{
        [Q](const Vector& q) { return *Q->nearest(q); },
        [&T, &y](const Vector& q) { return affine_project(T, y, q); }};
    Vector start = affine_project(T, y, anchor);
    auto res = dykstra(sets, start, cfg.solver_max_iter, 1e-11);
    Vector z = affine_project(T, y, res.point);
    if (Q->membership(z, ftol) != Membership::INSIDE) {
        // fall back to a certified interior-ish point before polishing
        z = F.point;
    }
    for (int cycle = 0; cycle < 3; ++cycle) {
        for (std::size_t j = 0; j < k; ++j) {
            const Vector& n = F.map.kernel[j];
            auto ext = line_extent(*Q, z, n, cfg.extent_cap, ftol);
            double a = vdot(n, vsub(anchor, z));
            a = std::min(std::max(a, ext.lo), ext.hi);
            vaxpy(a, n, z);
        }
    }
    return z;
}

}  // namespace lnc
