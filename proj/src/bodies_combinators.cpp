#include <algorithm>
#include <cmath>

#include "lnc/combinators.hpp"
#include "lnc/bodies.hpp"
#include "lnc/solvers.hpp"

namespace lnc {

// ---- Intersection ----

Intersection::Intersection(BodyPtr a, BodyPtr b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_ || a_->dim() != b_->dim())
        throw std::invalid_argument("intersection: dimension mismatch");
}

Membership Intersection::membership(const Vector& x, double tol) const {
    if (a_->membership(x, tol) == Membership::OUTSIDE) return Membership::OUTSIDE;
    return b_->membership(x, tol);
}

std::optional<Vector> Intersection::nearest(const Vector& p) const {
    if (membership(p, 0.0) == Membership::INSIDE) return p;
    auto pa = a_->nearest(p), pb = b_->nearest(p);
    if (!pa || !pb) return std::nullopt;
    // Single-constraint shortcut: when only one factor is violated and its
    // projection stays feasible for the other, that projection is exact.
    if (b_->membership(*pa, 1e-11) == Membership::INSIDE) return pa;
    if (a_->membership(*pb, 1e-11) == Membership::INSIDE) return pb;
    const BodyPtr a = a_, b = b_;
    std::vector<Projector> sets{
        [a](const Vector& q) { return *a->nearest(q); },
        [b](const Vector& q) { return *b->nearest(q); }};
    auto res = dykstra(sets, p, 10000, 1e-11);
    return res.point;
}

BoundingBox Intersection::bounding_box() const {
    BoundingBox ba = a_->bounding_box(), bb = b_->bounding_box();
    BoundingBox out = ba;
    for (std::size_t i = 0; i < out.lo.size(); ++i) {
        out.lo[i] = std::max(ba.lo[i], bb.lo[i]);
        out.hi[i] = std::min(ba.hi[i], bb.hi[i]);
    }
    return out;
}

bool Intersection::is_bounded() const { return bounding_box().bounded(); }

double Intersection::outside_margin(const Vector& x, double tol) const {
    if (membership(x, tol) == Membership::INSIDE) return 0.0;
    auto pa = a_->nearest(x), pb = b_->nearest(x);
    if (pa && pb) {
        auto q = nearest(x);
        if (q) return vdist(x, *q);
    }
    return std::max(a_->outside_margin(x, tol), b_->outside_margin(x, tol));
}

// ---- Product ----

Product::Product(BodyPtr a, BodyPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw std::invalid_argument("product: null factor");
}

Vector Product::head(const Vector& x) const {
    return Vector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(a_->dim()));
}

Vector Product::tail(const Vector& x) const {
    return Vector(x.begin() + static_cast<std::ptrdiff_t>(a_->dim()), x.end());
}

Membership Product::membership(const Vector& x, double tol) const {
    if (a_->membership(head(x), tol) == Membership::OUTSIDE)
        return Membership::OUTSIDE;
    return b_->membership(tail(x), tol);
}

std::optional<Vector> Product::nearest(const Vector& p) const {
    auto qa = a_->nearest(head(p));
    if (!qa) return std::nullopt;
    auto qb = b_->nearest(tail(p));
    if (!qb) return std::nullopt;
    Vector out = *qa;
    out.insert(out.end(), qb->begin(), qb->end());
    return out;
}

std::optional<SupportPoint> Product::support(const Vector& dir) const {
    auto sa = a_->support(head(dir));
    if (!sa) return std::nullopt;
    auto sb = b_->support(tail(dir));
    if (!sb) return std::nullopt;
    Vector pt = sa->point;
    pt.insert(pt.end(), sb->point.begin(), sb->point.end());
    return SupportPoint{sa->value + sb->value, pt};
}

BoundingBox Product::bounding_box() const {
    BoundingBox ba = a_->bounding_box(), bb = b_->bounding_box();
    Vector lo = ba.lo, hi = ba.hi;
    lo.insert(lo.end(), bb.lo.begin(), bb.lo.end());
    hi.insert(hi.end(), bb.hi.begin(), bb.hi.end());
    return {lo, hi};
}

bool Product::is_bounded() const {
    return a_->is_bounded() && b_->is_bounded();
}

double Product::outside_margin(const Vector& x, double tol) const {
    double ma = a_->outside_margin(head(x), tol);
    double mb = b_->outside_margin(tail(x), tol);
    return std::hypot(ma, mb);
}

// ---- Translate ----

Translate::Translate(BodyPtr base, Vector shift)
    : base_(std::move(base)), shift_(std::move(shift)) {
    if (!base_ || base_->dim() != shift_.size())
        throw std::invalid_argument("translate: dimension mismatch");
}

Membership Translate::membership(const Vector& x, double tol) const {
    return base_->membership(vsub(x, shift_), tol);
}

std::optional<Vector> Translate::nearest(const Vector& p) const {
    auto q = base_->nearest(vsub(p, shift_));
    if (!q) return std::nullopt;
    return vadd(*q, shift_);
}

std::optional<SupportPoint> Translate::support(const Vector& dir) const {
    auto s = base_->support(dir);
    if (!s) return std::nullopt;
    return SupportPoint{s->value + vdot(dir, shift_), vadd(s->point, shift_)};
}

BoundingBox Translate::bounding_box() const {
    BoundingBox b = base_->bounding_box();
    for (std::size_t i = 0; i < shift_.size(); ++i) {
        b.lo[i] += shift_[i];
        b.hi[i] += shift_[i];
    }
    return b;
}

double Translate::outside_margin(const Vector& x, double tol) const {
    return base_->outside_margin(vsub(x, shift_), tol);
}

// ---- Suspension ----

Suspension::Suspension(BodyPtr base) : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("suspension: null base");
}

namespace {

// Squared distance from (y, s) to the slice {t*x : x in base} x {t}; valid
// for t in (0, 1]. Convex in t by partial minimization over the suspension.
double susp_slice_dist2(const Body& base, const Vector& y, double s, double t) {
    Vector scaled = vscale(1.0 / t, y);
    Vector q = *base.nearest(scaled);
    q = vscale(t, q);
    return vnorm2sq(vsub(y, q)) + (s - t) * (s - t);
}

}  // namespace

Membership Suspension::membership(const Vector& x, double tol) const {
    const std::size_t n = base_->dim();
    double s = x[n];
    if (s < -tol || s > 1.0 + tol) return Membership::OUTSIDE;
    Vector y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    auto probe = base_->nearest(y);
    if (probe) {
        auto q = nearest(x);
        return vdist(x, *q) <= tol ? Membership::INSIDE : Membership::OUTSIDE;
    }
    // Slack fallback: test the scaled slice with a scaled tolerance.
    double te = std::max(s, std::max(tol, 1e-12));
    Vector scaled = vscale(1.0 / te, y);
    return base_->membership(scaled, std::min(tol / te, 1e6));
}

std::optional<Vector> Suspension::nearest(const Vector& p) const {
    const std::size_t n = base_->dim();
    Vector y(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
    double s = p[n];
    if (!base_->nearest(y)) return std::nullopt;
    double apex2 = vnorm2sq(y) + s * s;
    auto f = [&](double t) { return susp_slice_dist2(*base_, y, s, t); };
    double t = golden_min(f, 1e-9, 1.0, 1e-13);
    double ft = f(t);
    if (apex2 <= ft) return Vector(p.size(), 0.0);
    Vector scaled = vscale(1.0 / t, y);
    Vector q = *base_->nearest(scaled);
    q = vscale(t, q);
    q.push_back(t);
    return q;
}

std::optional<SupportPoint> Suspension::support(const Vector& dir) const {
    const std::size_t n = base_->dim();
    Vector dy(dir.begin(), dir.begin() + static_cast<std::ptrdiff_t>(n));
    auto s = base_->support(dy);
    if (!s) return std::nullopt;
    double top = s->value + dir[n];
    if (top <= 0.0) return SupportPoint{0.0, Vector(dir.size(), 0.0)};
    Vector pt = s->point;
    pt.push_back(1.0);
    return SupportPoint{top, pt};
}

BoundingBox Suspension::bounding_box() const {
    BoundingBox b = base_->bounding_box();
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
        b.lo[i] = std::min(0.0, b.lo[i]);
        b.hi[i] = std::max(0.0, b.hi[i]);
    }
    b.lo.push_back(0.0);
    b.hi.push_back(1.0);
    return b;
}

// ---- affine_image ----

BodyPtr affine_image(const Matrix& map, const Vector& offset, const BodyPtr& body) {
    if (map.cols != body->dim() || map.rows != offset.size())
        throw std::invalid_argument("affine_image: dimension mismatch");
    const std::string k = body->kind();
    if (k == "vpolytope") {
        const auto& vp = static_cast<const VPolytope&>(*body);
        std::vector<Vector> verts;
        verts.reserve(vp.vertices().size());
        for (const auto& v : vp.vertices())
            verts.push_back(vadd(map.apply(v), offset));
        return std::make_shared<VPolytope>(std::move(verts));
    }
    if (k == "zonotope") {
        const auto& z = static_cast<const Zonotope&>(*body);
        std::vector<Vector> gens;
        gens.reserve(z.generators().size());
        for (const auto& g : z.generators()) gens.push_back(map.apply(g));
        return std::make_shared<Zonotope>(vadd(map.apply(z.center()), offset),
                                          std::move(gens));
    }
    if (k == "translate") {
        const auto& t = static_cast<const Translate&>(*body);
        return affine_image(map, vadd(offset, map.apply(t.shift())), t.base());
    }
    throw UnsupportedImage("affine_image: no exact image for kind " + k);
}

}  // namespace lnc
