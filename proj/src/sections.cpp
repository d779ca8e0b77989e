#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "lnc/bodies.hpp"
#include "lnc/sections.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

double fiber_inside_tol(const Fiber& F, const ToolConfig& cfg) {
    return 2.0 * cfg.fiber_tol * (1.0 + vnorm(F.target));
}
}  // namespace

LinearMap quotient_map(const Vector& v) {
    if (vnorm(v) == 0.0) throw std::invalid_argument("quotient_map: zero v");
    Matrix row(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
    LinearMap along(std::move(row));
    Matrix T(along.kernel.size(), v.size());
    for (std::size_t i = 0; i < along.kernel.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) T(i, j) = along.kernel[i][j];
    return LinearMap(std::move(T));
}

GvPoint section_gv_fiber(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                         GvMode mode, const ToolConfig& cfg) {
    if (T.kernel.size() != 1)
        throw std::invalid_argument("section_gv: kernel dimension must be 1");
    Fiber F = make_fiber(Q, T, y, cfg);
    const Vector& v = T.kernel[0];
    auto ext = line_extent(*Q, F.point, v, cfg.extent_cap,
                           fiber_inside_tol(F, cfg));
    double c0 = vdot(v, F.point);
    double clo = c0 + ext.lo, chi = c0 + ext.hi;
    double c;
    bool clipped;
    if (mode == GvMode::LOWEST) {
        c = clo;
        clipped = ext.clipped_lo;
    } else {
        c = std::min(std::max(0.0, clo), chi);
        clipped = (c == clo && ext.clipped_lo) || (c == chi && ext.clipped_hi);
    }
    Vector out = F.point;
    vaxpy(c - c0, v, out);
    return {out, clipped};
}

GvPoint section_gv(const BodyPtr& Q, const Vector& v, const Vector& y,
                   GvMode mode, const ToolConfig& cfg) {
    return section_gv_fiber(Q, quotient_map(v), y, mode, cfg);
}

Vector section_min_norm(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                        const ToolConfig& cfg) {
    Fiber F = make_fiber(Q, T, y, cfg);
    return min_norm_over_fiber(F, vzero(Q->dim()), cfg);
}

Vector section_min_dist(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                        const ToolConfig& cfg) {
    Fiber F = make_fiber(Q, T, y, cfg);
    return min_norm_over_fiber(F, T.preimage_min_norm(y), cfg);
}

namespace {

// Gram-Schmidt of kernel restrictions; returns the accepted family.
std::vector<Vector> default_family(const LinearMap& T) {
    const std::size_t n = T.cols(), k = T.kernel.size();
    std::vector<Vector> fam;
    std::vector<Vector> basis;  // orthonormal restrictions accepted so far
    for (std::size_t i = 0; i < n && fam.size() < k; ++i) {
        Vector r(k);
        for (std::size_t j = 0; j < k; ++j) r[j] = T.kernel[j][i];
        for (const auto& b : basis) vaxpy(-vdot(b, r), b, r);
        if (vnorm(r) > 1e-9) {
            basis.push_back(vunit(r));
            Vector e(n, 0.0);
            e[i] = 1.0;
            fam.push_back(std::move(e));
        }
    }
    if (fam.size() != k)
        throw std::invalid_argument("gamma: no separating coordinate family");
    return fam;
}

// Restrictions M_ji = <F_j, n_i> of the family to the kernel basis.
Matrix restrict_family(const std::vector<Vector>& fam, const LinearMap& T) {
    Matrix M(fam.size(), T.kernel.size());
    for (std::size_t j = 0; j < fam.size(); ++j)
        for (std::size_t i = 0; i < T.kernel.size(); ++i)
            M(j, i) = vdot(fam[j], T.kernel[i]);
    return M;
}

GammaResult gamma_hpolytope(const HPolytope& hp, const Fiber& F,
                            const std::vector<Vector>& fam, const Matrix& M,
                            const ToolConfig& cfg) {
    const Matrix& A = hp.A();
    const std::size_t m = A.rows, k = F.kernel_dim();
    Matrix AN(m, k);
    Vector Ax = A.apply(F.point);
    Vector rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = std::max(hp.b()[i] - Ax[i], 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        Vector Anj = A.apply(F.map.kernel[j]);
        for (std::size_t i = 0; i < m; ++i) AN(i, j) = Anj[i];
    }
    Vector values(fam.size());
    Vector s(k, 0.0);
    std::vector<Vector> eq_rows;
    Vector eq_rhs;
    for (std::size_t stage = 0; stage < fam.size(); ++stage) {
        const std::size_t ne = eq_rows.size();
        LinearProgram lp;
        lp.A = Matrix(m + ne, k);
        lp.b = rhs;
        lp.sense.assign(m, -1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) lp.A(i, j) = AN(i, j);
        for (std::size_t e = 0; e < ne; ++e) {
            for (std::size_t j = 0; j < k; ++j) lp.A(m + e, j) = eq_rows[e][j];
            lp.b.push_back(eq_rhs[e]);
            lp.sense.push_back(0);
        }
        lp.c.assign(k, 0.0);
        for (std::size_t j = 0; j < k; ++j) lp.c[j] = M(stage, j);
        lp.lo.assign(k, -kInf);
        lp.hi.assign(k, kInf);
        auto r = lp_solve(lp, cfg.solver_max_iter);
        if (r.status == LpStatus::UNBOUNDED)
            throw std::runtime_error("gamma: slice value unbounded below");
        if (r.status != LpStatus::OPTIMAL)
            throw std::runtime_error("gamma: stage subproblem infeasible");
        s = r.x;
        double base = vdot(fam[stage], F.point);
        values[stage] = base + r.objective;
        Vector row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = M(stage, j);
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(r.objective);
    }
    Vector point = F.point;
    for (std::size_t j = 0; j < k; ++j) vaxpy(s[j], F.map.kernel[j], point);
    return {point, values};
}

// Linear descent over the fiber slice for oracle bodies: walk inside the
// body along the steepest admissible direction, with side moves that keep
// every earlier stage value fixed and reopen room for the next descent
// step. Alternating projections are avoided on purpose: they stall against
// tangent walls, and a stalled feasibility check corrupts the stage value.
// The cusp epigraph under the x-projection has closed-form stage minima:
// y falls to the floor of the slice and z to the graph bound. The walk
// would pay membership slack amplified by the 1/x factor here, so the
// closed form is used whenever the map and family are the canonical ones.
std::optional<GammaResult> gamma_epigraph19(const LinearMap& T,
                                            const Vector& y,
                                            const std::vector<Vector>& fam) {
    if (T.rows() != 1 || T.cols() != 3 || fam.size() != 2) return std::nullopt;
    if (std::fabs(T.A(0, 1)) > 1e-12 || std::fabs(T.A(0, 2)) > 1e-12 ||
        T.A(0, 0) == 0.0)
        return std::nullopt;
    // Stage 0 must order by y alone, stage 1 must then push z down.
    if (std::fabs(fam[0][2]) > 1e-12 || fam[0][1] <= 0.0 || fam[1][2] <= 0.0)
        return std::nullopt;
    double x0 = y[0] / T.A(0, 0);
    double xc = std::min(std::max(x0, 0.0), 1.0);
    Vector point(3);
    point[0] = x0;
    if (xc > 0.0) {
        point[1] = 0.0;
        point[2] = Epigraph19::lower_z(xc, 0.0);
    } else {
        point[1] = 1.0;  // slice degenerates to the closure ray
        point[2] = 0.0;
    }
    Vector values{vdot(fam[0], point), vdot(fam[1], point)};
    return GammaResult{std::move(point), std::move(values)};
}

GammaResult gamma_oracle(const BodyPtr& Q, const Fiber& F,
                         const std::vector<Vector>& fam, const Matrix& M,
                         const ToolConfig& cfg) {
    const std::size_t k = F.kernel_dim();
    const double tol = fiber_inside_tol(F, cfg);
    const double cap = cfg.extent_cap;
    Vector values(fam.size());
    Vector x = F.point;

    // Rows of M fixed so far; stage directions live in their null space,
    // expressed in kernel coefficients, so the equalities stay exact.
    std::vector<Vector> fixed;
    auto ambient = [&](const Vector& s) {
        Vector u(Q->dim(), 0.0);
        for (std::size_t i = 0; i < k; ++i) vaxpy(s[i], F.map.kernel[i], u);
        return u;
    };

    for (std::size_t stage = 0; stage < fam.size(); ++stage) {
        // Basis of admissible coefficient moves.
        std::vector<Vector> W;
        if (fixed.empty()) {
            for (std::size_t i = 0; i < k; ++i) {
                Vector e(k, 0.0);
                e[i] = 1.0;
                W.push_back(std::move(e));
            }
        } else {
            Matrix Fx(fixed.size(), k);
            for (std::size_t r = 0; r < fixed.size(); ++r)
                for (std::size_t i = 0; i < k; ++i) Fx(r, i) = fixed[r][i];
            W = nullspace(LinearMap(std::move(Fx)));
        }
        Vector mrow(k);
        for (std::size_t i = 0; i < k; ++i) mrow[i] = M(stage, i);
        // Steepest descent of the stage functional inside the admissible span.
        Vector sdir(k, 0.0);
        for (const Vector& w : W) vaxpy(-vdot(mrow, w), w, sdir);
        double slen = vnorm(sdir);
        if (slen > 1e-12) {
            Vector d = ambient(vscale(1.0 / slen, sdir));
            // Side moves: admissible and neutral for this stage.
            std::vector<Vector> side;
            for (const Vector& w : W) {
                Vector s = w;
                vaxpy(-vdot(mrow, w) / std::max(vnorm2sq(mrow), 1e-300), mrow,
                      s);
                for (const Vector& b : side) vaxpy(-vdot(b, s), b, s);
                if (vnorm(s) > 1e-9) side.push_back(vunit(s));
            }
            int flat = 0;
            for (int round = 0; round < 48 && flat < 3; ++round) {
                auto fall = [&](const Vector& from) -> double {
                    if (Q->membership(from, tol) != Membership::INSIDE)
                        return -1.0;
                    return line_extent(*Q, from, d, cap, tol).hi;
                };
                Vector launch = x;
                double len = fall(x);
                for (const Vector& s : side) {
                    Vector n = ambient(s);
                    auto e = line_extent(*Q, x, n, cap, tol);
                    for (double c : {0.5 * (e.lo + e.hi), e.hi, e.lo}) {
                        if (c == 0.0) continue;
                        Vector candv = x;
                        vaxpy(c, n, candv);
                        double g = fall(candv);
                        if (g > len + 1e-15) {
                            len = g;
                            launch = std::move(candv);
                        }
                    }
                }
                if (len <= 1e-12 * (1.0 + std::fabs(vdot(fam[stage], x)))) {
                    ++flat;
                    continue;
                }
                flat = 0;
                x = std::move(launch);
                vaxpy(len, d, x);
            }
        }
        values[stage] = vdot(fam[stage], x);
        fixed.push_back(mrow);
    }
    return {x, values};
}

}  // namespace

GammaResult section_gamma(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                          const std::vector<Vector>& family,
                          const ToolConfig& cfg) {
    Fiber F = make_fiber(Q, T, y, cfg);
    const std::size_t k = F.kernel_dim();
    if (k == 0) return {F.point, Vector{}};
    std::vector<Vector> fam = family.empty() ? default_family(T) : family;
    for (const auto& f : fam)
        if (f.size() != Q->dim())
            throw std::invalid_argument("gamma: functional dimension mismatch");
    Matrix M = restrict_family(fam, T);
    if (qr_decompose(M).rank != std::min(fam.size(), k) || fam.size() != k)
        throw std::invalid_argument("gamma: family must separate the kernel");
    if (Q->kind() == "hpolytope")
        return gamma_hpolytope(static_cast<const HPolytope&>(*Q), F, fam, M,
                               cfg);
    if (Q->kind() == "epigraph19")
        if (auto g = gamma_epigraph19(T, y, fam)) return std::move(*g);
    return gamma_oracle(Q, F, fam, M, cfg);
}

Vector evaluate_section(const SectionSpec& spec, const Vector& y, bool* clipped,
                        const ToolConfig& cfg) {
    if (clipped) *clipped = false;
    switch (spec.method) {
        case SectionMethod::GV_LOWEST: {
            auto g = section_gv_fiber(spec.Q, spec.T, y, GvMode::LOWEST, cfg);
            if (clipped) *clipped = g.clipped;
            return g.point;
        }
        case SectionMethod::GV_MIN_ABS: {
            auto g = section_gv_fiber(spec.Q, spec.T, y, GvMode::MIN_ABS, cfg);
            if (clipped) *clipped = g.clipped;
            return g.point;
        }
        case SectionMethod::MIN_NORM:
            return section_min_norm(spec.Q, spec.T, y, cfg);
        case SectionMethod::MIN_DIST:
            return section_min_dist(spec.Q, spec.T, y, cfg);
        case SectionMethod::GAMMA:
            return section_gamma(spec.Q, spec.T, y, spec.family, cfg).point;
    }
    throw std::logic_error("evaluate_section: bad method");
}

ProbeResult probe_continuity(const SectionSpec& spec,
                             const std::vector<Vector>& targets, int refine,
                             const ToolConfig& cfg) {
    ProbeResult out;
    auto eval = [&](const Vector& y, ProbeStep& st) {
        bool clipped = false;
        st.y = y;
        st.g = evaluate_section(spec, y, &clipped, cfg);
        st.residual = vdist(spec.T.apply(st.g), y);
        st.margin = spec.Q->outside_margin(st.g, cfg.membership_tol);
        st.clipped = clipped;
        st.jump = 0.0;
    };
    for (std::size_t i = 0; i < targets.size(); ++i) {
        ProbeStep st;
        try {
            eval(targets[i], st);
        } catch (const EmptyFiber&) {
            out.empty_index = i;
            break;
        }
        out.steps.push_back(std::move(st));
    }
    auto rejump = [&]() {
        out.max_jump = 0.0;
        out.argmax = 0;
        for (std::size_t i = 1; i < out.steps.size(); ++i) {
            out.steps[i].jump = vdist(out.steps[i].g, out.steps[i - 1].g);
            if (out.steps[i].jump > out.max_jump) {
                out.max_jump = out.steps[i].jump;
                out.argmax = i;
            }
        }
    };
    rejump();
    if (out.empty_index) return out;
    for (int r = 0; r < refine && out.max_jump > 0.0; ++r) {
        std::size_t i = out.argmax;
        Vector mid = vscale(0.5, vadd(out.steps[i - 1].y, out.steps[i].y));
        ProbeStep st;
        try {
            eval(mid, st);
        } catch (const EmptyFiber&) {
            out.empty_index = out.steps.size();
            break;
        }
        out.steps.insert(out.steps.begin() + static_cast<std::ptrdiff_t>(i),
                         std::move(st));
        rejump();
    }
    return out;
}

}  // namespace lnc
