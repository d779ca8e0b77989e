#pragma once
#include <stdexcept>
#include <string>

#include "lnc/body.hpp"
#include "lnc/config.hpp"
#include "lnc/linalg.hpp"

namespace lnc {

class EmptyFiber : public std::runtime_error {
  public:
    explicit EmptyFiber(const std::string& what) : std::runtime_error(what) {}
};

// Slice {x in Q : T x = y} together with a certified point. `point` satisfies
// the equality to rounding; its distance to Q is at most the fiber tolerance
// used to build it.
struct Fiber {
    BodyPtr body;
    LinearMap map;
    Vector target;
    Vector point;

    std::size_t kernel_dim() const { return map.kernel.size(); }
};

// Orthogonal projection of x onto the affine set {z : T z = y} (assumes y is
// in the range of T).
Vector affine_project(const LinearMap& T, const Vector& y, const Vector& x);

// Build the slice or throw EmptyFiber. Exact phase-1 LPs for polytopal
// bodies; alternating projections against Q.nearest otherwise.
Fiber make_fiber(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                 const ToolConfig& cfg = {});

// Cheap capped feasibility probe for the same slice. False negatives are
// possible when max_iter is small; there are no false positives beyond tol.
bool fiber_feasible_hint(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                         int max_iter, double tol);

// Point of the slice nearest to anchor.
Vector min_norm_over_fiber(const Fiber& F, const Vector& anchor,
                           const ToolConfig& cfg = {});

}  // namespace lnc
