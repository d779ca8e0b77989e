#pragma once
#include <vector>

#include "lnc/body.hpp"
#include "lnc/linalg.hpp"

namespace lnc {

class Intersection final : public Body {
  public:
    Intersection(BodyPtr a, BodyPtr b);
    std::size_t dim() const override { return a_->dim(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override;
    std::string kind() const override { return "intersection"; }
    double outside_margin(const Vector& x, double tol) const override;

    const BodyPtr& first() const { return a_; }
    const BodyPtr& second() const { return b_; }

  private:
    BodyPtr a_, b_;
};

class Product final : public Body {
  public:
    Product(BodyPtr a, BodyPtr b);
    std::size_t dim() const override { return a_->dim() + b_->dim(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override;
    std::string kind() const override { return "product"; }
    double outside_margin(const Vector& x, double tol) const override;

    const BodyPtr& first() const { return a_; }
    const BodyPtr& second() const { return b_; }

  private:
    Vector head(const Vector& x) const;
    Vector tail(const Vector& x) const;
    BodyPtr a_, b_;
};

class Translate final : public Body {
  public:
    Translate(BodyPtr base, Vector shift);
    std::size_t dim() const override { return base_->dim(); }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return base_->is_bounded(); }
    std::string kind() const override { return "translate"; }
    double outside_margin(const Vector& x, double tol) const override;

    const BodyPtr& base() const { return base_; }
    const Vector& shift() const { return shift_; }

  private:
    BodyPtr base_;
    Vector shift_;
};

// {(t*x, t) : x in base, t in [0, 1]}.
class Suspension final : public Body {
  public:
    explicit Suspension(BodyPtr base);
    std::size_t dim() const override { return base_->dim() + 1; }
    Membership membership(const Vector& x, double tol) const override;
    std::optional<Vector> nearest(const Vector& p) const override;
    std::optional<SupportPoint> support(const Vector& dir) const override;
    BoundingBox bounding_box() const override;
    bool is_bounded() const override { return base_->is_bounded(); }
    std::string kind() const override { return "suspension"; }

    const BodyPtr& base() const { return base_; }

  private:
    BodyPtr base_;
};

// Exact image A*body + offset. Representable only for vertex and generator
// presentations; the constructor converts eagerly and throws
// UnsupportedImage otherwise.
class UnsupportedImage : public std::runtime_error {
  public:
    explicit UnsupportedImage(const std::string& what)
        : std::runtime_error(what) {}
};

BodyPtr affine_image(const Matrix& map, const Vector& offset, const BodyPtr& body);

}  // namespace lnc
