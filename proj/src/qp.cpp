#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lnc/solvers.hpp"

namespace lnc {

namespace {

// Least-norm-style solve of the EQP: the minimizer of ||z - p|| subject to
// A_W z = b_W is p - A_W^T w where (A_W A_W^T) w = A_W p - b_W.
Vector eqp_point(const Matrix& A, const Vector& b,
                 const std::vector<std::size_t>& W, const Vector& p) {
    if (W.empty()) return p;
    const std::size_t s = W.size(), n = A.cols;
    Matrix G(s, s);
    Vector r(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t wi = W[i];
        for (std::size_t j = 0; j < s; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += A(wi, k) * A(W[j], k);
            G(i, j) = acc;
        }
        double ap = 0.0;
        for (std::size_t k = 0; k < n; ++k) ap += A(wi, k) * p[k];
        r[i] = ap - b[wi];
    }
    Vector w = solve_lstsq(G, r);
    Vector z = p;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < n; ++k) z[k] -= w[i] * A(W[i], k);
    return z;
}

Vector eqp_multipliers(const Matrix& A, const std::vector<std::size_t>& W,
                       const Vector& p, const Vector& x) {
    // x - p + A_W^T lam = 0  =>  A_W^T lam = p - x.
    const std::size_t s = W.size(), n = A.cols;
    Matrix At(n, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < n; ++k) At(k, i) = A(W[i], k);
    Vector rhs = vsub(p, x);
    return solve_lstsq(At, rhs);
}

}  // namespace

Vector project_onto_hpolytope(const Matrix& A, const Vector& b,
                              const Vector& p, const Vector& feasible_seed,
                              int max_iter) {
    const std::size_t m = A.rows;
    Vector x = feasible_seed;
    std::vector<std::size_t> W;
    std::vector<char> inW(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        double ax = 0.0;
        for (std::size_t k = 0; k < A.cols; ++k) ax += A(i, k) * x[k];
        if (ax > b[i] + 1e-9)
            throw std::invalid_argument("project_onto_hpolytope: infeasible seed");
    }

    for (int iter = 0; iter < max_iter; ++iter) {
        Vector z = eqp_point(A, b, W, p);
        Vector d = vsub(z, x);
        if (vnorm(d) <= 1e-12 * (1.0 + vnorm(x))) {
            if (W.empty()) return x;
            Vector lam = eqp_multipliers(A, W, p, x);
            std::size_t drop = W.size();
            for (std::size_t i = 0; i < W.size(); ++i) {
                if (lam[i] < -1e-10) {
                    drop = i;
                    break;  // lowest index keeps the iteration acyclic
                }
            }
            if (drop == W.size()) return x;
            inW[W[drop]] = 0;
            W.erase(W.begin() + static_cast<std::ptrdiff_t>(drop));
            continue;
        }
        double alpha = 1.0;
        std::size_t blocking = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (inW[i]) continue;
            double ad = 0.0, ax = 0.0;
            for (std::size_t k = 0; k < A.cols; ++k) {
                ad += A(i, k) * d[k];
                ax += A(i, k) * x[k];
            }
            if (ad <= 1e-12) continue;
            double step = (b[i] - ax) / ad;
            if (step < alpha - 1e-15) {
                alpha = step;
                blocking = i;
            }
        }
        if (alpha < 0.0) alpha = 0.0;
        vaxpy(alpha, d, x);
        if (blocking < m) {
            W.push_back(blocking);
            inW[blocking] = 1;
        }
    }
    throw SolverError("project_onto_hpolytope: iteration cap");
}

Vector project_simplex(const Vector& y) {
    const std::size_t k = y.size();
    Vector u = y;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t i = 0; i < k; ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = i + 1;
            tau = t;
        }
    }
    Vector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = std::max(0.0, y[i] - tau);
    return x;
}

namespace {

// FISTA with restart for min 0.5||G t - d||^2 over a set given by its
// projector. G is n x k (columns act on t entries).
Vector fista(const Matrix& G, const Vector& d,
             const std::function<Vector(const Vector&)>& proj, Vector t0,
             int max_iter) {
    const std::size_t k = G.cols;
    // Lipschitz constant of the gradient via power iteration on G^T G. The
    // start vector is deliberately uneven: an all-ones start is orthogonal to
    // the range for sign-symmetric columns and would collapse to zero.
    Vector u(k);
    for (std::size_t j = 0; j < k; ++j)
        u[j] = 1.0 + 0.37 * static_cast<double>((j * 2654435761u) % 101) / 101.0;
    double lam = 0.0;
    for (int it = 0; it < 60; ++it) {
        Vector Gu = G.apply(u);
        Vector w = G.applyT(Gu);
        double nw = vnorm(w);
        if (nw < 1e-300) break;
        lam = nw / std::max(vnorm(u), 1e-300);
        u = vscale(1.0 / nw, w);
    }
    if (lam <= 0.0) {
        // Frobenius bound dominates the spectral norm; safe if power failed.
        for (std::size_t i = 0; i < G.rows; ++i)
            for (std::size_t j = 0; j < k; ++j) lam += G(i, j) * G(i, j);
    }
    double step = 1.0 / std::max(lam, 1e-12);

    Vector t = proj(std::move(t0));
    Vector y = t, tprev = t;
    double theta = 1.0;
    double fprev = std::numeric_limits<double>::infinity();
    int stable = 0;
    for (int it = 0; it < max_iter; ++it) {
        Vector r = G.apply(y);
        vaxpy(-1.0, d, r);  // r = G y - d
        Vector grad = G.applyT(r);
        Vector cand = y;
        vaxpy(-step, grad, cand);
        tprev = t;
        t = proj(cand);
        Vector rt = G.apply(t);
        vaxpy(-1.0, d, rt);
        double f = 0.5 * vnorm2sq(rt);
        if (f > fprev + 1e-18) {  // restart momentum
            theta = 1.0;
            y = t;
        } else {
            double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
            double beta = (theta - 1.0) / theta_next;
            y = t;
            Vector diff = vsub(t, tprev);
            vaxpy(beta, diff, y);
            theta = theta_next;
        }
        fprev = f;
        double move = vdist(t, tprev);
        if (move < 1e-13 * (1.0 + vnorm(t))) {
            if (++stable >= 3) break;
        } else {
            stable = 0;
        }
    }
    return t;
}

double fit_error(const Matrix& G, const Vector& d, const Vector& t) {
    Vector r = G.apply(t);
    vaxpy(-1.0, d, r);
    return 0.5 * vnorm2sq(r);
}

}  // namespace

Vector nearest_convex_coefficients(const std::vector<Vector>& vertices,
                                   const Vector& p, int max_iter) {
    const std::size_t k = vertices.size();
    if (k == 0) throw std::invalid_argument("nearest_convex_coefficients: empty hull");
    const std::size_t n = vertices[0].size();
    if (k == 1) return Vector{1.0};
    Matrix G(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) G(i, j) = vertices[j][i];

    Vector t0(k, 1.0 / static_cast<double>(k));
    Vector l = fista(G, p, [](const Vector& y) { return project_simplex(y); },
                     t0, max_iter);

    // Face polish: exact equality-constrained solve on the detected support.
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < k; ++i)
        if (l[i] > 1e-9) S.push_back(i);
    if (!S.empty() && S.size() < 2 * n + 4) {
        const std::size_t s = S.size();
        Matrix K(s + 1, s + 1);
        Vector rhs(s + 1, 0.0);
        for (std::size_t a = 0; a < s; ++a) {
            for (std::size_t c = 0; c < s; ++c)
                K(a, c) = vdot(vertices[S[a]], vertices[S[c]]);
            K(a, s) = 1.0;
            K(s, a) = 1.0;
            rhs[a] = vdot(vertices[S[a]], p);
        }
        rhs[s] = 1.0;
        Vector sol = solve_lstsq(K, rhs);
        bool ok = true;
        double sum = 0.0;
        for (std::size_t a = 0; a < s; ++a) {
            if (sol[a] < -1e-11) ok = false;
            sum += std::max(0.0, sol[a]);
        }
        if (ok && std::fabs(sum - 1.0) < 1e-8 && sum > 0.0) {
            Vector cand(k, 0.0);
            for (std::size_t a = 0; a < s; ++a)
                cand[S[a]] = std::max(0.0, sol[a]) / sum;
            if (fit_error(G, p, cand) <= fit_error(G, p, l) + 1e-15) l = cand;
        }
    }
    return l;
}

Vector nearest_box_coefficients(const Matrix& G, const Vector& d, int max_iter) {
    const std::size_t k = G.cols;
    auto clip = [](const Vector& y) {
        Vector x = y;
        for (double& v : x) v = std::min(1.0, std::max(0.0, v));
        return x;
    };
    Vector t = fista(G, d, clip, Vector(k, 0.5), max_iter);

    // Polish: exact least squares on the free set with actives clamped.
    for (int round = 0; round < 5; ++round) {
        std::vector<std::size_t> F;
        Vector dd = d;
        for (std::size_t i = 0; i < k; ++i) {
            if (t[i] < 1e-9) {
                continue;  // clamped at 0 contributes nothing
            } else if (t[i] > 1.0 - 1e-9) {
                for (std::size_t r = 0; r < G.rows; ++r) dd[r] -= G(r, i);
            } else {
                F.push_back(i);
            }
        }
        if (F.empty()) break;
        Matrix Gf(G.rows, F.size());
        for (std::size_t c = 0; c < F.size(); ++c)
            for (std::size_t r = 0; r < G.rows; ++r) Gf(r, c) = G(r, F[c]);
        Vector tf = solve_lstsq(Gf, dd);
        bool in_box = true;
        for (double v : tf)
            if (v < -1e-11 || v > 1.0 + 1e-11) in_box = false;
        if (!in_box) break;
        Vector cand = t;
        for (std::size_t c = 0; c < F.size(); ++c)
            cand[F[c]] = std::min(1.0, std::max(0.0, tf[c]));
        for (std::size_t i = 0; i < k; ++i) {
            if (cand[i] < 1e-9) cand[i] = 0.0;
            if (cand[i] > 1.0 - 1e-9) cand[i] = 1.0;
        }
        if (fit_error(G, d, cand) <= fit_error(G, d, t) + 1e-18) {
            if (vdist(cand, t) < 1e-14) {
                t = cand;
                break;
            }
            t = cand;
        } else {
            break;
        }
    }
    return t;
}

DykstraResult dykstra(const std::vector<Projector>& projectors,
                      const Vector& start, int max_iter, double tol) {
    const std::size_t ns = projectors.size();
    Vector x = start;
    std::vector<Vector> inc(ns, Vector(start.size(), 0.0));
    double resid = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        Vector xprev = x;
        for (std::size_t i = 0; i < ns; ++i) {
            Vector y = vadd(x, inc[i]);
            Vector px = projectors[i](y);
            inc[i] = vsub(y, px);
            x = std::move(px);
        }
        resid = vdist(x, xprev);
        if (resid < tol * (1.0 + vnorm(x)))
            return {x, it + 1, true, resid};
    }
    return {x, max_iter, false, resid};
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol, int max_iter) {
    if (!(lo <= hi)) std::swap(lo, hi);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double invphi2 = invphi * invphi;
    double a = lo, b = hi;
    double h = b - a;
    if (h <= tol) return 0.5 * (a + b);
    double c = a + invphi2 * h, d = a + invphi * h;
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && h > tol * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + invphi2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + invphi * h;
            fd = f(d);
        }
    }
    return (fc < fd) ? 0.5 * (a + d) : 0.5 * (c + b);
}

}  // namespace lnc
