#pragma once
#include <optional>
#include <vector>

#include "lnc/fiber.hpp"

namespace lnc {

enum class GvMode { LOWEST, MIN_ABS };

enum class SectionMethod { GV_LOWEST, GV_MIN_ABS, MIN_NORM, MIN_DIST, GAMMA };

struct GvPoint {
    Vector point;
    bool clipped;  // chosen endpoint hit the extent cap
};

// Endpoint section over a line fiber. The map must have a one dimensional
// kernel; LOWEST takes the endpoint of least kernel coordinate, MIN_ABS the
// fiber point whose kernel coordinate is nearest zero (ties toward the
// nonnegative side).
GvPoint section_gv_fiber(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                         GvMode mode, const ToolConfig& cfg = {});

// Same section addressed by the direction v: the map is the orthonormal
// complement of v, targets live in that coordinate system.
GvPoint section_gv(const BodyPtr& Q, const Vector& v, const Vector& y,
                   GvMode mode, const ToolConfig& cfg = {});
LinearMap quotient_map(const Vector& v);

// Fiber point of least norm / nearest to the least squares preimage.
Vector section_min_norm(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                        const ToolConfig& cfg = {});
Vector section_min_dist(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                        const ToolConfig& cfg = {});

// Lexicographic slice: minimize <F_1, x>, then <F_2, x> subject to the
// earlier minima, and so on, over the fiber. The family must separate the
// kernel (rank = kernel dimension); when empty, ambient coordinate
// functionals are taken in index order, skipping dependent ones.
struct GammaResult {
    Vector point;
    Vector values;  // achieved functional values, one per stage
};
GammaResult section_gamma(const BodyPtr& Q, const LinearMap& T, const Vector& y,
                          const std::vector<Vector>& family,
                          const ToolConfig& cfg = {});

struct SectionSpec {
    BodyPtr Q;
    LinearMap T;
    SectionMethod method = SectionMethod::GV_LOWEST;
    std::vector<Vector> family;  // GAMMA only; empty = default family
};

Vector evaluate_section(const SectionSpec& spec, const Vector& y,
                        bool* clipped, const ToolConfig& cfg = {});

struct ProbeStep {
    Vector y;
    Vector g;
    double jump;      // distance to the previous retained step, 0 for the first
    double residual;  // ||T g - y||
    double margin;    // distance outside Q, ~0
    bool clipped;
};

struct ProbeResult {
    std::vector<ProbeStep> steps;
    double max_jump = 0.0;
    std::size_t argmax = 0;  // step index ending the largest jump
    std::optional<std::size_t> empty_index;  // target hitting an empty fiber
};

// Evaluate the section along the target list, then bisect the largest jump
// interval `refine` times. On an empty fiber the partial result is returned
// with empty_index set to the offending position in the evaluation order.
ProbeResult probe_continuity(const SectionSpec& spec,
                             const std::vector<Vector>& targets, int refine,
                             const ToolConfig& cfg = {});

}  // namespace lnc
