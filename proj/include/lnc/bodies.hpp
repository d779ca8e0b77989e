#pragma once
#include <vector>

#include "lnc/body.hpp"

namespace lnc {

class Ball final : public Body {
  public:
    Ball(Vector center, double radius);
    std::size_t dim() const override { return center_.size(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "ball"; }

    const Vector& center() const { return center_; }
    double radius() const { return radius_; }

  private:
    Vector center_;
    double radius_;
};

// {x : (x-c)^T M (x-c) <= 1} with M symmetric positive definite.
// Membership uses the gauge sqrt((x-c)^T M (x-c)) <= 1 + tol so the
// tolerance scales like a distance.
class Ellipsoid final : public Body {
  public:
    Ellipsoid(Vector center, Matrix shape);
    std::size_t dim() const override { return center_.size(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "ellipsoid"; }

    const Vector& center() const { return center_; }
    const Matrix& shape() const { return shape_; }

  private:
    double gauge(const Vector& x) const;
    Vector center_;
    Matrix shape_;
    EigenSym eig_;  // shape_ = V diag(d) V^T, d ascending, all > 0
};

// {x : A x <= b}. Rows are normalized at construction so slacks are signed
// distances to the bounding hyperplanes. Nonemptiness is certified by a
// stored feasible point (found by LP if not supplied).
class HPolytope final : public Body {
  public:
    HPolytope(Matrix A, Vector b);
    HPolytope(Matrix A, Vector b, Vector feasible);
    std::size_t dim() const override { return A_.cols; }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override { return box_; }
    bool is_bounded() const override;
    std::string kind() const override { return "hpolytope"; }
    double outside_margin(const Vector& x, double tol) const override;

    const Matrix& A() const { return A_; }
    const Vector& b() const { return b_; }
    const Vector& feasible_point() const { return feasible_; }

  private:
    void init();
    Matrix A_;
    Vector b_;
    Vector feasible_;
    BoundingBox box_;
};

// Convex hull of finitely many points (rows of V).
class VPolytope final : public Body {
  public:
    explicit VPolytope(std::vector<Vector> vertices);
    std::size_t dim() const override { return vertices_[0].size(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "vpolytope"; }

    const std::vector<Vector>& vertices() const { return vertices_; }

    // Least squares coefficients of the hull combination nearest to p.
    Vector nearest_coefficients(const Vector& p) const;

  private:
    std::vector<Vector> vertices_;
};

// {c + sum t_i g_i : t in [0,1]^k}.
class Zonotope final : public Body {
  public:
    Zonotope(Vector center, std::vector<Vector> generators);
    std::size_t dim() const override { return center_.size(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "zonotope"; }

    const Vector& center() const { return center_; }
    const std::vector<Vector>& generators() const { return generators_; }

  private:
    Vector center_;
    std::vector<Vector> generators_;
};

// Face decomposition of a zonotope in a direction: F = argmax <dir, .> is
// itself a zonotope A + w, and Z = A + B (Minkowski). Generators orthogonal
// to dir (relative tolerance 1e-9) go to A, the rest to B;
// w = center + sum of generators with positive <dir, g>.
struct ZonotopeFace {
    Zonotope face_part;   // A, centered at origin
    Zonotope rest_part;   // B, keeps the center
    Vector offset;        // w with A + w = F
};
ZonotopeFace face_decompose_zonotope(const Zonotope& Z, const Vector& dir);

// 2x2 symmetric matrices X = [[a, b], [b, c]] with 0 <= X <= I, embedded
// as (a, b, c).
class PSDCap2 final : public Body {
  public:
    PSDCap2() = default;
    std::size_t dim() const override { return 3; }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "psdcap2"; }
};

// {(x, y, z) : x, y >= 0, x + y <= 1, z >= (1-y)^3 / x} with the convention
// (1-y)^3/x = 0 when x = 0 and y = 1. Unbounded in z; margins are slack
// based because no cheap exact projection exists for the whole set.
class Epigraph19 final : public Body {
  public:
    Epigraph19() = default;
    std::size_t dim() const override { return 3; }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return false; }
    std::string kind() const override { return "epigraph19"; }
    double outside_margin(const Vector& x, double tol) const override;

    // Lower boundary value of z over (x, y), +inf off the slice x = 0, y < 1.
    static double lower_z(double x, double y);
};

// Solid circular cone around the z axis: apex (0, .., 0, z_apex), base disk
// of the given radius at z_base, radius interpolating linearly between.
class CircularCone final : public Body {
  public:
    CircularCone(double z_apex, double z_base, double base_radius);
    std::size_t dim() const override { return 3; }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return true; }
    std::string kind() const override { return "circular_cone"; }

    double z_apex() const { return z_apex_; }
    double z_base() const { return z_base_; }
    double base_radius() const { return base_radius_; }
    double radius_at(double z) const;

  private:
    double z_apex_, z_base_, base_radius_;
};

}  // namespace lnc
