#include <algorithm>
#include <cmath>
#include <limits>

#include "lnc/kernels.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;
const double kInf = std::numeric_limits<double>::infinity();

// Dense tableau for min c^T x, A x = b, x >= 0, with b >= 0 on entry.
// Artificial variables come in +/- pairs so the phase-1 optimum equals the
// L1 residual of the system over the nonnegative orthant.
struct Tableau {
    std::size_t m, n;        // rows, structural columns
    std::size_t ncols;       // n + 2m (structural + artificial pairs)
    std::vector<double> t;   // (m+1) x (ncols+1), row major; last row = cost
    std::vector<std::size_t> basis;
    std::vector<char> dead;  // redundant rows frozen after phase 1

    double* row(std::size_t i) { return &t[i * (ncols + 1)]; }
    const double* row(std::size_t i) const { return &t[i * (ncols + 1)]; }
    double& rhs(std::size_t i) { return t[i * (ncols + 1) + ncols]; }
    double& cost(std::size_t j) { return t[m * (ncols + 1) + j]; }
    double& cost_rhs() { return t[m * (ncols + 1) + ncols]; }

    void pivot(std::size_t pr, std::size_t pc) {
        double* prow = row(pr);
        double inv = 1.0 / prow[pc];
        kernels::ops().scal(inv, prow, ncols + 1);
        prow[pc] = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == pr) continue;
            double* r = row(i);
            double f = r[pc];
            if (f == 0.0) continue;
            kernels::ops().axpy(-f, prow, r, ncols + 1);
            r[pc] = 0.0;
        }
        basis[pr] = pc;
    }

    // Bland's rule over columns allowed by `limit` (entering index < limit).
    // Returns false at optimality; throws on pivot-cap exhaustion upstream.
    enum class Step { OPTIMAL, PIVOTED, UNBOUNDED };
    Step step(std::size_t limit) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < limit; ++j) {
            if (cost(j) < -kCostTol) {
                enter = j;
                break;
            }
        }
        if (enter == ncols) return Step::OPTIMAL;
        std::size_t leave = m;
        double best = kInf;
        for (std::size_t i = 0; i < m; ++i) {
            if (dead[i]) continue;
            double a = row(i)[enter];
            if (a <= kPivotTol) continue;
            double ratio = rhs(i) / a;
            if (ratio < best - 1e-15 ||
                (ratio < best + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) return Step::UNBOUNDED;
        pivot(leave, enter);
        for (std::size_t i = 0; i < m; ++i)
            if (rhs(i) < 0.0 && rhs(i) > -1e-11) rhs(i) = 0.0;
        return Step::PIVOTED;
    }
};

struct StandardSolve {
    LpStatus status;
    Vector x;               // structural variables
    double objective;
    Vector dual;
    double dual_objective;
    double infeasibility;   // phase-1 optimum
};

StandardSolve solve_standard(const Matrix& A, const Vector& b, const Vector& c,
                             int max_pivots) {
    const std::size_t m = A.rows, n = A.cols;
    if (b.size() != m || c.size() != n)
        throw std::invalid_argument("lp: inconsistent dimensions");

    // Normalize b >= 0 and remember row signs for the duals.
    Matrix An = A;
    Vector bn = b;
    std::vector<double> rowsign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (bn[i] < 0.0) {
            rowsign[i] = -1.0;
            bn[i] = -bn[i];
            for (std::size_t j = 0; j < n; ++j) An(i, j) = -An(i, j);
        }
    }

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.ncols = n + 2 * m;
    tb.t.assign((m + 1) * (tb.ncols + 1), 0.0);
    tb.basis.assign(m, 0);
    tb.dead.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        double* r = tb.row(i);
        for (std::size_t j = 0; j < n; ++j) r[j] = An(i, j);
        r[n + 2 * i] = 1.0;       // t+ artificial
        r[n + 2 * i + 1] = -1.0;  // t- artificial
        tb.rhs(i) = bn[i];
        tb.basis[i] = n + 2 * i;
    }
    // Phase-1 cost: sum of artificials, expressed over the current basis.
    for (std::size_t j = 0; j < 2 * m; ++j) tb.cost(n + j) = 1.0;
    for (std::size_t i = 0; i < m; ++i)
        kernels::ops().axpy(-1.0, tb.row(i), tb.row(m), tb.ncols + 1);

    int pivots = 0;
    while (true) {
        if (pivots++ > max_pivots) throw SolverError("lp: phase-1 pivot cap");
        auto s = tb.step(tb.ncols);
        if (s == Tableau::Step::OPTIMAL) break;
        if (s == Tableau::Step::UNBOUNDED)
            throw SolverError("lp: phase-1 unbounded (numeric)");
    }
    double infeas = -tb.cost_rhs();
    StandardSolve out;
    out.infeasibility = std::max(0.0, infeas);
    if (infeas > kFeasTol) {
        out.status = LpStatus::INFEASIBLE;
        out.objective = kInf;
        out.dual_objective = -kInf;
        out.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (tb.basis[i] < n) out.x[tb.basis[i]] = tb.rhs(i);
        return out;
    }

    // Drive basic artificials out; freeze genuinely redundant rows.
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        std::size_t pc = tb.ncols;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::fabs(tb.row(i)[j]) > kPivotTol) {
                pc = j;
                break;
            }
        }
        if (pc == tb.ncols) {
            tb.dead[i] = 1;
            continue;
        }
        tb.pivot(i, pc);
    }

    // Phase-2 cost row.
    for (std::size_t j = 0; j <= tb.ncols; ++j) tb.cost(j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) tb.cost(j) = c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] >= n) continue;
        double cb = c[tb.basis[i]];
        if (cb != 0.0) kernels::ops().axpy(-cb, tb.row(i), tb.row(m), tb.ncols + 1);
    }

    while (true) {
        if (pivots++ > max_pivots) throw SolverError("lp: phase-2 pivot cap");
        auto s = tb.step(n);  // artificials may not re-enter
        if (s == Tableau::Step::OPTIMAL) break;
        if (s == Tableau::Step::UNBOUNDED) {
            out.status = LpStatus::UNBOUNDED;
            out.objective = -kInf;
            out.dual_objective = -kInf;
            out.x.assign(n, 0.0);
            return out;
        }
    }

    out.status = LpStatus::OPTIMAL;
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) out.x[tb.basis[i]] = std::max(0.0, tb.rhs(i));
    out.objective = vdot(c, out.x);

    // Duals: solve B^T y = c_B from the recorded basis against the
    // normalized system, then undo the row signs.
    Matrix Bt(m, m);
    Vector cb(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = tb.basis[i];
        if (j < n) {
            for (std::size_t r = 0; r < m; ++r) Bt(i, r) = An(r, j);
            cb[i] = c[j];
        } else {
            std::size_t r0 = (j - n) / 2;
            double sgn = ((j - n) % 2 == 0) ? 1.0 : -1.0;
            Bt(i, r0) = sgn;
            cb[i] = 0.0;
        }
    }
    Vector y = solve_lstsq(Bt, cb);
    out.dual.assign(m, 0.0);
    double dobj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.dual[i] = y[i] * rowsign[i];
        dobj += y[i] * bn[i];
    }
    out.dual_objective = dobj;
    return out;
}

}  // namespace

LpResult lp_solve_standard(const Matrix& A, const Vector& b, const Vector& c,
                           int max_pivots) {
    auto s = solve_standard(A, b, c, max_pivots);
    return {s.status, s.x, s.objective, s.dual, s.dual_objective};
}

FeasibilityResult lp_feasible_point(const Matrix& A, const Vector& b,
                                    int max_pivots) {
    Vector c(A.cols, 0.0);
    auto s = solve_standard(A, b, c, max_pivots);
    return {s.infeasibility, s.x};
}

LpResult lp_solve(const LinearProgram& lp, int max_pivots) {
    const std::size_t m = lp.A.rows, n = lp.A.cols;
    if (lp.b.size() != m || lp.c.size() != n || lp.sense.size() != m ||
        lp.lo.size() != n || lp.hi.size() != n)
        throw std::invalid_argument("lp: inconsistent dimensions");

    // Variable encoding into the nonnegative standard form:
    //   finite lo:            x = lo + u
    //   lo = -inf, finite hi: x = hi - u
    //   free:                 x = u+ - u-
    // Finite his with finite los become extra <= rows.
    struct Enc {
        int kind;  // 0 shifted up, 1 shifted down, 2 split
        std::size_t col;
        double shift;
    };
    std::vector<Enc> enc(n);
    std::size_t ncols = 0;
    std::vector<std::pair<std::size_t, double>> ubrows;  // (var, hi - lo)
    for (std::size_t j = 0; j < n; ++j) {
        bool lof = std::isfinite(lp.lo[j]), hif = std::isfinite(lp.hi[j]);
        if (lof) {
            enc[j] = {0, ncols++, lp.lo[j]};
            if (hif) ubrows.push_back({j, lp.hi[j] - lp.lo[j]});
        } else if (hif) {
            enc[j] = {1, ncols++, lp.hi[j]};
        } else {
            enc[j] = {2, ncols, 0.0};
            ncols += 2;
        }
    }
    std::size_t nineq = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.sense[i] != 0) ++nineq;
    std::size_t mstd = m + ubrows.size();
    std::size_t nstd = ncols + nineq + ubrows.size();

    Matrix As(mstd, nstd);
    Vector bs(mstd, 0.0), cs(nstd, 0.0);

    auto put = [&](std::size_t i, std::size_t j, double a) {
        if (a == 0.0) return;
        const Enc& e = enc[j];
        if (e.kind == 0) {
            As(i, e.col) += a;
            bs[i] -= a * e.shift;
        } else if (e.kind == 1) {
            As(i, e.col) -= a;
            bs[i] -= a * e.shift;
        } else {
            As(i, e.col) += a;
            As(i, e.col + 1) -= a;
        }
    };

    std::size_t slack = ncols;
    for (std::size_t i = 0; i < m; ++i) {
        bs[i] += lp.b[i];
        for (std::size_t j = 0; j < n; ++j) put(i, j, lp.A(i, j));
        if (lp.sense[i] < 0)
            As(i, slack++) = 1.0;
        else if (lp.sense[i] > 0)
            As(i, slack++) = -1.0;
    }
    for (std::size_t k = 0; k < ubrows.size(); ++k) {
        std::size_t i = m + k;
        As(i, enc[ubrows[k].first].col) = 1.0;
        As(i, slack++) = 1.0;
        bs[i] = ubrows[k].second;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Enc& e = enc[j];
        double cj = lp.c[j];
        if (e.kind == 0) {
            cs[e.col] += cj;
        } else if (e.kind == 1) {
            cs[e.col] -= cj;
        } else {
            cs[e.col] += cj;
            cs[e.col + 1] -= cj;
        }
    }
    double cshift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (enc[j].kind == 0)
            cshift += lp.c[j] * enc[j].shift;
        else if (enc[j].kind == 1)
            cshift += lp.c[j] * enc[j].shift;
    }

    auto s = solve_standard(As, bs, cs, max_pivots);
    LpResult out;
    out.status = s.status;
    out.dual = s.dual;
    out.dual_objective = s.dual_objective + (s.status == LpStatus::OPTIMAL ? cshift : 0.0);
    out.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const Enc& e = enc[j];
        if (e.kind == 0)
            out.x[j] = e.shift + s.x[e.col];
        else if (e.kind == 1)
            out.x[j] = e.shift - s.x[e.col];
        else
            out.x[j] = s.x[e.col] - s.x[e.col + 1];
    }
    out.objective = (s.status == LpStatus::OPTIMAL) ? vdot(lp.c, out.x)
                    : (s.status == LpStatus::UNBOUNDED ? -kInf : kInf);
    if (out.dual.size() > m) out.dual.resize(m);  // drop bound-row duals
    return out;
}

}  // namespace lnc
