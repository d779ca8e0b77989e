#include <cmath>

#include "lnc/bodies.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

namespace {

// Eigenvalues of [[a, b], [b, c]], ascending.
std::pair<double, double> eig2(double a, double b, double c) {
    double m = 0.5 * (a + c);
    double r = std::hypot(0.5 * (a - c), b);
    return {m - r, m + r};
}

// Euclidean projection of p = (a, b, c) onto K = {X >= 0}. The boundary is
// ruled by rank-1 rays r * d(theta), d = (cos^2, cos*sin, sin^2); project by
// minimizing over the ray family (grid then golden refinement).
Vector proj_cone(const Vector& p) {
    auto [lmin, lmax] = eig2(p[0], p[1], p[2]);
    if (lmin >= 0.0) return p;
    auto at = [&](double th) {
        double ct = std::cos(th), st = std::sin(th);
        Vector d{ct * ct, ct * st, st * st};
        double r = std::max(0.0, vdot(p, d) / vnorm2sq(d));
        return vscale(r, d);
    };
    auto h = [&](double th) { return vnorm2sq(vsub(p, at(th))); };
    const int kGrid = 128;
    double best_th = 0.0, best_h = h(0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 1; i < kGrid; ++i) {
        double th = pi * i / kGrid;
        double v = h(th);
        if (v < best_h) {
            best_h = v;
            best_th = th;
        }
    }
    double step = pi / kGrid;
    double th = golden_min(h, best_th - step, best_th + step, 1e-14);
    Vector q = at(th);
    if (vnorm2sq(vsub(p, q)) > vnorm2sq(p)) return Vector{0.0, 0.0, 0.0};
    return q;
}

// {X <= I} is the reflection of K through I/2, and reflection is an isometry
// of (a, b, c) space.
Vector proj_cap(const Vector& p) {
    Vector i{1.0, 0.0, 1.0};
    Vector q = proj_cone(vsub(i, p));
    return vsub(i, q);
}

}  // namespace

Membership PSDCap2::membership(const Vector& x, double tol) const {
    auto [lmin, lmax] = eig2(x[0], x[1], x[2]);
    if (lmin < -tol || lmax > 1.0 + tol) return Membership::OUTSIDE;
    return Membership::INSIDE;
}

std::optional<Vector> PSDCap2::nearest(const Vector& p) const {
    if (membership(p, 0.0) == Membership::INSIDE) return p;
    // Single-constraint shortcut: a one-sided projection that lands inside
    // the other constraint is the exact projection onto the intersection.
    Vector lo = proj_cone(p);
    if (membership(lo, 1e-11) == Membership::INSIDE) return lo;
    Vector hi = proj_cap(p);
    if (membership(hi, 1e-11) == Membership::INSIDE) return hi;
    auto res = dykstra({proj_cone, proj_cap}, p, 10000, 1e-11);
    return res.point;
}

std::optional<SupportPoint> PSDCap2::support(const Vector& dir) const {
    // <dir, (a,b,c)> = tr(D X) with D = [[d0, d1/2], [d1/2, d2]]; over
    // 0 <= X <= I the maximizer is the projector onto D's positive
    // eigenspace and the value is the sum of positive eigenvalues.
    double d0 = dir[0], d1 = 0.5 * dir[1], d2 = dir[2];
    double m = 0.5 * (d0 + d2);
    double r = std::hypot(0.5 * (d0 - d2), d1);
    double l1 = m - r, l2 = m + r;
    Vector x{0.0, 0.0, 0.0};
    double val = 0.0;
    auto add_projector = [&](double lam) {
        // unit eigenvector for eigenvalue lam of [[d0, d1], [d1, d2]]
        double ux, uy;
        if (std::fabs(d1) > 1e-300) {
            ux = lam - d2;
            uy = d1;
        } else if (d0 >= d2) {
            ux = lam > m ? 1.0 : 0.0;
            uy = lam > m ? 0.0 : 1.0;
        } else {
            ux = lam > m ? 0.0 : 1.0;
            uy = lam > m ? 1.0 : 0.0;
        }
        double n = std::hypot(ux, uy);
        if (n == 0.0) {
            ux = 1.0;
            uy = 0.0;
            n = 1.0;
        }
        ux /= n;
        uy /= n;
        x[0] += ux * ux;
        x[1] += ux * uy;
        x[2] += uy * uy;
        val += lam;
    };
    if (l2 > 1e-14) add_projector(l2);
    if (l1 > 1e-14) add_projector(l1);
    if (l1 > 1e-14 && l2 > 1e-14) x = Vector{1.0, 0.0, 1.0};  // both: X = I
    return SupportPoint{val, x};
}

BoundingBox PSDCap2::bounding_box() const {
    return {{0.0, -0.5, 0.0}, {1.0, 0.5, 1.0}};
}

}  // namespace lnc
