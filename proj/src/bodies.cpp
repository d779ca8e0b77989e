#include <algorithm>
#include <cmath>
#include <limits>

#include "lnc/bodies.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

// ---- Body defaults ----

std::optional<Vector> Body::nearest(const Vector&) const { return std::nullopt; }

std::optional<SupportPoint> Body::support(const Vector&) const {
    return std::nullopt;
}

double Body::outside_margin(const Vector& x, double tol) const {
    if (membership(x, tol) == Membership::INSIDE) return 0.0;
    auto q = nearest(x);
    if (!q) throw std::logic_error("outside_margin: body has no projection");
    return vdist(x, *q);
}

bool BoundingBox::bounded() const {
    for (double v : lo)
        if (!std::isfinite(v)) return false;
    for (double v : hi)
        if (!std::isfinite(v)) return false;
    return true;
}

double BoundingBox::half_diagonal(double clip) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        double l = std::max(lo[i], -clip), h = std::min(hi[i], clip);
        double w = std::max(0.0, h - l);
        acc += w * w;
    }
    return 0.5 * std::sqrt(acc);
}

// ---- line_extent ----

namespace {

// One-sided extent: largest b in [0, cap] with x + b*v inside, by doubling
// bracket plus bisection. Returns (b, clipped).
std::pair<double, bool> directed_extent(const Body& Q, const Vector& x,
                                        const Vector& v, double cap,
                                        double tol) {
    auto inside = [&](double b) {
        Vector p = x;
        vaxpy(b, v, p);
        return Q.membership(p, tol) == Membership::INSIDE;
    };
    double t = cap * std::pow(2.0, -40);
    double lo = 0.0, hi = -1.0;
    while (t < cap) {
        if (!inside(t)) {
            hi = t;
            break;
        }
        lo = t;
        t *= 2.0;
    }
    if (hi < 0.0) {
        if (inside(cap)) return {cap, true};
        hi = cap;
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-15 * (1.0 + hi); ++i) {
        double mid = 0.5 * (lo + hi);
        if (inside(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, false};
}

}  // namespace

ExtentInterval line_extent(const Body& Q, const Vector& x, const Vector& v,
                           double cap, double membership_tol) {
    if (vnorm(v) == 0.0) throw std::invalid_argument("line_extent: zero direction");
    if (Q.membership(x, membership_tol) != Membership::INSIDE)
        throw std::invalid_argument("line_extent: base point not inside");
    auto [hi, chi] = directed_extent(Q, x, v, cap, membership_tol);
    Vector nv = vscale(-1.0, v);
    auto [lo, clo] = directed_extent(Q, x, nv, cap, membership_tol);
    return {-lo, hi, clo, chi};
}

// ---- Ball ----

Ball::Ball(Vector center, double radius)
    : center_(std::move(center)), radius_(radius) {
    if (center_.empty() || !all_finite(center_) || !(radius_ > 0.0) ||
        !std::isfinite(radius_))
        throw std::invalid_argument("ball: bad parameters");
}

Membership Ball::membership(const Vector& x, double tol) const {
    return vdist(x, center_) <= radius_ + tol ? Membership::INSIDE
                                              : Membership::OUTSIDE;
}

std::optional<Vector> Ball::nearest(const Vector& p) const {
    double d = vdist(p, center_);
    if (d <= radius_) return p;
    Vector r = vsub(p, center_);
    Vector out = center_;
    vaxpy(radius_ / d, r, out);
    return out;
}

std::optional<SupportPoint> Ball::support(const Vector& dir) const {
    double nd = vnorm(dir);
    if (nd == 0.0) return SupportPoint{vdot(dir, center_), center_};
    Vector pt = center_;
    vaxpy(radius_ / nd, dir, pt);
    return SupportPoint{vdot(dir, center_) + radius_ * nd, pt};
}

BoundingBox Ball::bounding_box() const {
    Vector lo = center_, hi = center_;
    for (std::size_t i = 0; i < center_.size(); ++i) {
        lo[i] -= radius_;
        hi[i] += radius_;
    }
    return {lo, hi};
}

// ---- Ellipsoid ----

Ellipsoid::Ellipsoid(Vector center, Matrix shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
    const std::size_t n = center_.size();
    if (n == 0 || shape_.rows != n || shape_.cols != n || !all_finite(center_))
        throw std::invalid_argument("ellipsoid: bad dimensions");
    double scale = 0.0;
    for (double v : shape_.a) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(shape_(i, j) - shape_(j, i)) > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("ellipsoid: shape not symmetric");
    eig_ = eig_sym(shape_);
    for (double d : eig_.values)
        if (!(d > 0.0))
            throw std::invalid_argument("ellipsoid: shape not positive definite");
}

double Ellipsoid::gauge(const Vector& x) const {
    Vector r = vsub(x, center_);
    Vector y = eig_.vectors.applyT(r);
    double q = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) q += eig_.values[i] * y[i] * y[i];
    return std::sqrt(std::max(0.0, q));
}

Membership Ellipsoid::membership(const Vector& x, double tol) const {
    return gauge(x) <= 1.0 + tol ? Membership::INSIDE : Membership::OUTSIDE;
}

std::optional<Vector> Ellipsoid::nearest(const Vector& p) const {
    Vector r = vsub(p, center_);
    Vector y = eig_.vectors.applyT(r);
    double q = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) q += eig_.values[i] * y[i] * y[i];
    if (q <= 1.0) return p;
    // KKT: z_i = y_i / (1 + mu d_i), with mu > 0 solving phi(mu) = 1.
    auto phi = [&](double mu) {
        double acc = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double t = y[i] / (1.0 + mu * eig_.values[i]);
            acc += eig_.values[i] * t * t;
        }
        return acc;
    };
    double lo = 0.0, hi = 1.0;
    while (phi(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 1e18) break;
    }
    for (int i = 0; i < 300 && (hi - lo) > 1e-15 * (1.0 + hi); ++i) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double mu = 0.5 * (lo + hi);
    Vector z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        z[i] = y[i] / (1.0 + mu * eig_.values[i]);
    Vector out = eig_.vectors.apply(z);
    return vadd(center_, out);
}

std::optional<SupportPoint> Ellipsoid::support(const Vector& dir) const {
    Vector yd = eig_.vectors.applyT(dir);
    Vector wi(yd.size());
    double quad = 0.0;
    for (std::size_t i = 0; i < yd.size(); ++i) {
        wi[i] = yd[i] / eig_.values[i];
        quad += yd[i] * wi[i];
    }
    if (quad <= 0.0) return SupportPoint{vdot(dir, center_), center_};
    double s = std::sqrt(quad);
    Vector w = eig_.vectors.apply(wi);
    Vector pt = center_;
    vaxpy(1.0 / s, w, pt);
    return SupportPoint{vdot(dir, center_) + s, pt};
}

BoundingBox Ellipsoid::bounding_box() const {
    const std::size_t n = center_.size();
    Vector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        // (M^{-1})_{ii} = sum_j V_ij^2 / d_j
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double vij = eig_.vectors(i, j);
            acc += vij * vij / eig_.values[j];
        }
        double half = std::sqrt(std::max(0.0, acc));
        lo[i] = center_[i] - half;
        hi[i] = center_[i] + half;
    }
    return {lo, hi};
}

// ---- HPolytope ----

HPolytope::HPolytope(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
    init();
    // Certify nonemptiness: maximize the inradius slack t, capped at 1.
    const std::size_t m = A_.rows, n = A_.cols;
    LinearProgram lp;
    lp.A = Matrix(m, n + 1);
    lp.b = b_;
    lp.sense.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = A_(i, j);
        lp.A(i, n) = 1.0;
    }
    lp.c.assign(n + 1, 0.0);
    lp.c[n] = -1.0;
    lp.lo.assign(n + 1, -kInf);
    lp.hi.assign(n + 1, kInf);
    lp.hi[n] = 1.0;
    auto r = lp_solve(lp);
    if (r.status != LpStatus::OPTIMAL || r.x[n] < -1e-9)
        throw std::invalid_argument("hpolytope: empty");
    feasible_ = Vector(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
    init();  // recompute box with the feasible point known
}

HPolytope::HPolytope(Matrix A, Vector b, Vector feasible)
    : A_(std::move(A)), b_(std::move(b)), feasible_(std::move(feasible)) {
    if (feasible_.size() != A_.cols)
        throw std::invalid_argument("hpolytope: feasible point dimension");
    init();
    if (membership(feasible_, 1e-7) != Membership::INSIDE)
        throw std::invalid_argument("hpolytope: stored point not feasible");
}

void HPolytope::init() {
    const std::size_t n = A_.cols;
    if (A_.rows == 0 || n == 0 || b_.size() != A_.rows)
        throw std::invalid_argument("hpolytope: bad dimensions");
    Matrix An(A_.rows, n);
    Vector bn(A_.rows);
    std::size_t keep = 0;
    for (std::size_t i = 0; i < A_.rows; ++i) {
        double nrm = 0.0;
        for (std::size_t j = 0; j < n; ++j) nrm += A_(i, j) * A_(i, j);
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-14) {
            if (b_[i] < -1e-12)
                throw std::invalid_argument("hpolytope: infeasible zero row");
            continue;  // trivial row
        }
        // Keep normalization idempotent so a serialized body re-parses to
        // exactly the same coefficients.
        if (std::abs(nrm - 1.0) <= 1e-12) nrm = 1.0;
        for (std::size_t j = 0; j < n; ++j) An(keep, j) = A_(i, j) / nrm;
        bn[keep] = b_[i] / nrm;
        ++keep;
    }
    if (keep == 0) throw std::invalid_argument("hpolytope: no effective rows");
    Matrix Ak(keep, n);
    Vector bk(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        for (std::size_t j = 0; j < n; ++j) Ak(i, j) = An(i, j);
        bk[i] = bn[i];
    }
    A_ = std::move(Ak);
    b_ = std::move(bk);

    box_.lo.assign(n, -kInf);
    box_.hi.assign(n, kInf);
    for (std::size_t j = 0; j < n; ++j) {
        for (int sgn : {1, -1}) {
            LinearProgram lp;
            lp.A = A_;
            lp.b = b_;
            lp.sense.assign(A_.rows, -1);
            lp.c.assign(n, 0.0);
            lp.c[j] = sgn;  // min sgn*x_j
            lp.lo.assign(n, -kInf);
            lp.hi.assign(n, kInf);
            auto r = lp_solve(lp);
            if (r.status == LpStatus::OPTIMAL) {
                if (sgn > 0)
                    box_.lo[j] = r.objective;
                else
                    box_.hi[j] = -r.objective;
            }
        }
    }
}

Membership HPolytope::membership(const Vector& x, double tol) const {
    for (std::size_t i = 0; i < A_.rows; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < A_.cols; ++j) ax += A_(i, j) * x[j];
        if (ax > b_[i] + tol) return Membership::OUTSIDE;
    }
    return Membership::INSIDE;
}

std::optional<Vector> HPolytope::nearest(const Vector& p) const {
    if (membership(p, 0.0) == Membership::INSIDE) return p;
    return project_onto_hpolytope(A_, b_, p, feasible_);
}

std::optional<SupportPoint> HPolytope::support(const Vector& dir) const {
    LinearProgram lp;
    lp.A = A_;
    lp.b = b_;
    lp.sense.assign(A_.rows, -1);
    lp.c = vscale(-1.0, dir);
    lp.lo.assign(A_.cols, -kInf);
    lp.hi.assign(A_.cols, kInf);
    auto r = lp_solve(lp);
    if (r.status != LpStatus::OPTIMAL) return std::nullopt;
    return SupportPoint{-r.objective, r.x};
}

bool HPolytope::is_bounded() const { return box_.bounded(); }

double HPolytope::outside_margin(const Vector& x, double tol) const {
    if (membership(x, tol) == Membership::INSIDE) return 0.0;
    return vdist(x, *nearest(x));
}

// ---- VPolytope ----

VPolytope::VPolytope(std::vector<Vector> vertices)
    : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("vpolytope: no vertices");
    const std::size_t n = vertices_[0].size();
    if (n == 0) throw std::invalid_argument("vpolytope: zero dimension");
    for (const auto& v : vertices_)
        if (v.size() != n || !all_finite(v))
            throw std::invalid_argument("vpolytope: bad vertex");
}

Membership VPolytope::membership(const Vector& x, double tol) const {
    const std::size_t k = vertices_.size(), n = x.size();
    Matrix A(n + 1, k);
    Vector b(n + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) A(i, j) = vertices_[j][i];
        A(n, j) = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = x[i];
    b[n] = 1.0;
    auto f = lp_feasible_point(A, b);
    return f.infeasibility <= tol ? Membership::INSIDE : Membership::OUTSIDE;
}

Vector VPolytope::nearest_coefficients(const Vector& p) const {
    return nearest_convex_coefficients(vertices_, p);
}

std::optional<Vector> VPolytope::nearest(const Vector& p) const {
    Vector l = nearest_coefficients(p);
    Vector out(p.size(), 0.0);
    for (std::size_t j = 0; j < vertices_.size(); ++j)
        vaxpy(l[j], vertices_[j], out);
    return out;
}

std::optional<SupportPoint> VPolytope::support(const Vector& dir) const {
    std::size_t best = 0;
    double bv = vdot(dir, vertices_[0]);
    for (std::size_t j = 1; j < vertices_.size(); ++j) {
        double v = vdot(dir, vertices_[j]);
        if (v > bv + 1e-15) {
            bv = v;
            best = j;
        }
    }
    return SupportPoint{bv, vertices_[best]};
}

BoundingBox VPolytope::bounding_box() const {
    Vector lo = vertices_[0], hi = vertices_[0];
    for (const auto& v : vertices_) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    return {lo, hi};
}

// ---- Zonotope ----

Zonotope::Zonotope(Vector center, std::vector<Vector> generators)
    : center_(std::move(center)), generators_(std::move(generators)) {
    if (center_.empty() || !all_finite(center_))
        throw std::invalid_argument("zonotope: bad center");
    for (const auto& g : generators_)
        if (g.size() != center_.size() || !all_finite(g))
            throw std::invalid_argument("zonotope: bad generator");
}

Membership Zonotope::membership(const Vector& x, double tol) const {
    const std::size_t k = generators_.size(), n = center_.size();
    if (k == 0)
        return vdist(x, center_) <= tol ? Membership::INSIDE : Membership::OUTSIDE;
    // Variables (t, s) >= 0 with G t = x - c and t + s = 1.
    Matrix A(n + k, 2 * k);
    Vector b(n + k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) A(i, j) = generators_[j][i];
        A(n + j, j) = 1.0;
        A(n + j, k + j) = 1.0;
        b[n + j] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = x[i] - center_[i];
    auto f = lp_feasible_point(A, b);
    return f.infeasibility <= tol ? Membership::INSIDE : Membership::OUTSIDE;
}

std::optional<Vector> Zonotope::nearest(const Vector& p) const {
    const std::size_t k = generators_.size(), n = center_.size();
    if (k == 0) return center_;
    Matrix G(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) G(i, j) = generators_[j][i];
    Vector t = nearest_box_coefficients(G, vsub(p, center_));
    Vector out = center_;
    for (std::size_t j = 0; j < k; ++j) vaxpy(t[j], generators_[j], out);
    return out;
}

std::optional<SupportPoint> Zonotope::support(const Vector& dir) const {
    Vector pt = center_;
    double val = vdot(dir, center_);
    for (const auto& g : generators_) {
        double dg = vdot(dir, g);
        if (dg > 0.0) {
            vaxpy(1.0, g, pt);
            val += dg;
        }
    }
    return SupportPoint{val, pt};
}

BoundingBox Zonotope::bounding_box() const {
    Vector lo = center_, hi = center_;
    for (const auto& g : generators_) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            lo[i] += std::min(0.0, g[i]);
            hi[i] += std::max(0.0, g[i]);
        }
    }
    return {lo, hi};
}

ZonotopeFace face_decompose_zonotope(const Zonotope& Z, const Vector& dir) {
    double nd = vnorm(dir);
    if (nd == 0.0) throw std::invalid_argument("face_decompose: zero direction");
    std::vector<Vector> ga, gb;
    Vector w = Z.center();
    for (const auto& g : Z.generators()) {
        double dg = vdot(dir, g);
        if (std::fabs(dg) <= 1e-9 * nd * vnorm(g)) {
            ga.push_back(g);
        } else {
            gb.push_back(g);
            if (dg > 0.0) vaxpy(1.0, g, w);
        }
    }
    Vector zero(Z.dim(), 0.0);
    return {Zonotope(zero, std::move(ga)), Zonotope(Z.center(), std::move(gb)),
            std::move(w)};
}

// ---- Epigraph19 ----

double Epigraph19::lower_z(double x, double y) {
    double u = 1.0 - y;
    if (x > 0.0) {
        if (u <= 0.0) return 0.0;
        return u * u * u / x;
    }
    return u <= 0.0 ? 0.0 : kInf;
}

// Distance to the closure ray {x = 0, y >= 1, z >= 0}. The graph bound
// blows up as x -> 0 with y < 1, so tolerance tests near the ray must be
// metric, not slack-based.
static double epi_ray_distance(double x, double y, double z) {
    double dx = std::max(x, 0.0);
    double dy = std::max(1.0 - y, 0.0);
    double dz = std::max(-z, 0.0);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Membership Epigraph19::membership(const Vector& p, double tol) const {
    double x = p[0], y = p[1], z = p[2];
    if (x < -tol || y < -tol || x + y > 1.0 + tol) return Membership::OUTSIDE;
    double lz = lower_z(std::max(x, 0.0), y);
    if (z >= lz - tol) return Membership::INSIDE;
    return epi_ray_distance(x, y, z) <= tol ? Membership::INSIDE
                                            : Membership::OUTSIDE;
}

double Epigraph19::outside_margin(const Vector& p, double tol) const {
    if (membership(p, tol) == Membership::INSIDE) return 0.0;
    double x = p[0], y = p[1], z = p[2];
    double m = 0.0;
    m = std::max(m, -x);
    m = std::max(m, -y);
    m = std::max(m, x + y - 1.0);
    double lz = lower_z(std::max(x, 0.0), y);
    m = std::max(m, std::isfinite(lz) ? lz - z : 1e9);
    // Cap by the ray distance: slack in z wildly overstates how far a point
    // hugging the closure ray really is from the body.
    return std::min({m, epi_ray_distance(x, y, z), 1e9});
}

namespace {

// Convex extension used for projections: g = (max(0, 1-y))^3 / x on x > 0,
// closing to {x = 0, y >= 1, z >= 0}.
double epi_gfun(double x, double y) {
    double u = std::max(0.0, 1.0 - y);
    return u * u * u / x;
}

Vector project_epi(const Vector& p) {
    double px = p[0], py = p[1], pz = p[2];
    if (px > 0.0 && pz >= epi_gfun(px, py)) return p;
    if (px == 0.0 && py >= 1.0 && pz >= 0.0) return p;
    // Edge candidate.
    Vector edge{0.0, std::max(py, 1.0), std::max(pz, 0.0)};
    double edge_d = vdist(p, edge);
    // Smooth candidate: coordinate golden descent on the graph z = g(x, y).
    auto F = [&](double x, double y) {
        double dz = epi_gfun(x, y) - pz;
        return (x - px) * (x - px) + (y - py) * (y - py) + dz * dz;
    };
    double bx = 0.5, by = 0.5, bf = F(bx, by);
    for (double x0 : {0.05, 0.5, std::min(3.0, std::max(0.05, px))}) {
        double y0 = std::min(2.0, std::max(-1.0, py));
        if (F(x0, y0) < bf) {
            bx = x0;
            by = y0;
            bf = F(x0, y0);
        }
    }
    for (int cycle = 0; cycle < 10; ++cycle) {
        double nx = golden_min([&](double x) { return F(x, by); }, 1e-9, 4.0, 1e-13);
        double ny = golden_min([&](double y) { return F(nx, y); }, -3.0, 3.0, 1e-13);
        if (std::fabs(nx - bx) + std::fabs(ny - by) < 1e-13) {
            bx = nx;
            by = ny;
            break;
        }
        bx = nx;
        by = ny;
    }
    Vector smooth{bx, by, epi_gfun(bx, by)};
    return vdist(p, smooth) <= edge_d ? smooth : edge;
}

}  // namespace

std::optional<Vector> Epigraph19::nearest(const Vector& p) const {
    if (membership(p, 0.0) == Membership::INSIDE) return p;
    std::vector<Projector> sets;
    sets.push_back(project_epi);
    sets.push_back([](const Vector& q) {
        Vector r = q;
        r[0] = std::max(0.0, r[0]);
        return r;
    });
    sets.push_back([](const Vector& q) {
        Vector r = q;
        r[1] = std::max(0.0, r[1]);
        return r;
    });
    sets.push_back([](const Vector& q) {
        Vector r = q;
        double s = r[0] + r[1] - 1.0;
        if (s > 0.0) {
            r[0] -= 0.5 * s;
            r[1] -= 0.5 * s;
        }
        return r;
    });
    auto res = dykstra(sets, p, 10000, 1e-11);
    return res.point;
}

BoundingBox Epigraph19::bounding_box() const {
    return {{0.0, 0.0, 0.0}, {1.0, 1.0, kInf}};
}

// ---- CircularCone ----

CircularCone::CircularCone(double z_apex, double z_base, double base_radius)
    : z_apex_(z_apex), z_base_(z_base), base_radius_(base_radius) {
    if (!(z_apex_ > z_base_) || !(base_radius_ > 0.0))
        throw std::invalid_argument("circular_cone: bad parameters");
}

double CircularCone::radius_at(double z) const {
    return base_radius_ * (z_apex_ - z) / (z_apex_ - z_base_);
}

Membership CircularCone::membership(const Vector& p, double tol) const {
    double z = p[2];
    if (z < z_base_ - tol || z > z_apex_ + tol) return Membership::OUTSIDE;
    double zc = std::min(z_apex_, std::max(z_base_, z));
    double r = std::hypot(p[0], p[1]);
    return r <= radius_at(zc) + tol ? Membership::INSIDE : Membership::OUTSIDE;
}

std::optional<Vector> CircularCone::nearest(const Vector& p) const {
    if (membership(p, 0.0) == Membership::INSIDE) return p;
    double rp = std::hypot(p[0], p[1]);
    auto dist2 = [&](double z) {
        double dr = std::max(0.0, rp - radius_at(z));
        double dz = p[2] - z;
        return dr * dr + dz * dz;
    };
    double z = golden_min(dist2, z_base_, z_apex_, 1e-13);
    double r = radius_at(z);
    Vector out(3);
    if (rp <= r || rp == 0.0) {
        out[0] = p[0];
        out[1] = p[1];
        if (rp > r && rp > 0.0) {
            out[0] *= r / rp;
            out[1] *= r / rp;
        }
    } else {
        out[0] = p[0] * (r / rp);
        out[1] = p[1] * (r / rp);
    }
    out[2] = z;
    return out;
}

std::optional<SupportPoint> CircularCone::support(const Vector& d) const {
    double apex_val = d[2] * z_apex_;
    double nd = std::hypot(d[0], d[1]);
    double base_val = nd * base_radius_ + d[2] * z_base_;
    if (apex_val >= base_val)
        return SupportPoint{apex_val, {0.0, 0.0, z_apex_}};
    Vector pt(3);
    if (nd > 0.0) {
        pt[0] = base_radius_ * d[0] / nd;
        pt[1] = base_radius_ * d[1] / nd;
    } else {
        pt[0] = base_radius_;
        pt[1] = 0.0;
    }
    pt[2] = z_base_;
    return SupportPoint{base_val, pt};
}

BoundingBox CircularCone::bounding_box() const {
    return {{-base_radius_, -base_radius_, z_base_},
            {base_radius_, base_radius_, z_apex_}};
}

}  // namespace lnc
