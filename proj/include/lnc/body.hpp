#pragma once
#include <memory>
#include <optional>
#include <string>

#include "lnc/linalg.hpp"

namespace lnc {

enum class Membership { INSIDE, OUTSIDE };

struct BoundingBox {
    Vector lo;
    Vector hi;
    bool bounded() const;
    // Half diagonal of the box clipped to [-clip, clip] per coordinate.
    double half_diagonal(double clip = 1e3) const;
};

struct SupportPoint {
    double value;  // max of <dir, x> over the body
    Vector point;  // a maximizer
};

class Body;
using BodyPtr = std::shared_ptr<const Body>;

// Closed convex set given by oracles. INSIDE means within tolerance of the
// set: exact bodies use Euclidean distance, constraint-form bodies use
// normalized slack. Implementations must be immutable after construction.
class Body {
  public:
    virtual ~Body() = default;

    virtual std::size_t dim() const = 0;
    virtual Membership membership(const Vector& x, double tol) const = 0;

    // Euclidean projection onto the body, when the shape supports one.
    virtual std::optional<Vector> nearest(const Vector& p) const;

    // Exact support maximizer, when available. nullopt also when the value
    // is unbounded in the given direction.
    virtual std::optional<SupportPoint> support(const Vector& dir) const;

    virtual BoundingBox bounding_box() const = 0;
    virtual bool is_bounded() const = 0;
    virtual std::string kind() const = 0;

    // How far outside the point is: 0 for INSIDE points. Default derives it
    // from nearest(); bodies without projections must override.
    virtual double outside_margin(const Vector& x, double tol) const;

    bool inside(const Vector& x, double tol) const {
        return membership(x, tol) == Membership::INSIDE;
    }
};

// Extent interval of {b : x + b*v in Q} around an INSIDE point x.
// lo <= 0 <= hi in units of v. Ends hitting the cap are flagged clipped.
struct ExtentInterval {
    double lo;
    double hi;
    bool clipped_lo;
    bool clipped_hi;
};

ExtentInterval line_extent(const Body& Q, const Vector& x, const Vector& v,
                           double cap, double membership_tol);

}  // namespace lnc
