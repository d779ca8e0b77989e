#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnc/body.hpp"
#include "lnc/config.hpp"

namespace lnc {

// One rung of the dyadic shift grid at a candidate point: both q + eps*v and
// q - eps*v lie outside by at least the margin floor of the scale.
struct EpsProbe {
    double eps;
    double margin_plus;
    double margin_minus;
};

struct ApproachPoint {
    Vector q;
    double scale;        // sampling radius used at this rung
    double dist_to_mid;  // ||q - midpoint||, strictly decreasing over rungs
    std::vector<EpsProbe> probes;  // maximal failing prefix from eps = 1/2
};

struct LncWitness {
    Vector x;
    Vector x_prime;
    Vector v;  // x - x_prime
    Vector midpoint;
    std::vector<ApproachPoint> approach;  // one per scale, coarse to fine
    std::string pool;       // "point" (anchored at x) or "midpoint"
    int pair_index = -1;
    std::string pair_mode;  // "interior", "support", "chord", "boundary_line"
};

struct SearchStats {
    int pairs = 0;
    int skipped_short = 0;      // ||v|| below the guard
    int skipped_prescreen = 0;  // midpoint not near the boundary
    int triggered = 0;          // passed every scale on the first pass
    int confirmed = 0;          // also reproduced under resampling
};

struct SearchReport {
    bool witness_found = false;
    std::optional<LncWitness> witness;
    SearchStats stats;
    double scale_base = 0.0;     // first sampling radius
    std::vector<double> scales;  // primary then confirmation radii
    std::vector<double> floors;  // margin floor per scale
};

// Search parameters fixed by the trigger analysis. A candidate fails a rung
// of the shift grid only when both sides are outside by the floor, which
// bounds the v-parallel chord through it by ||v||/4 once the prefix reaches
// kPrefixRequired; the guard fraction keeps quarter-point depth of curved
// bodies above the finest sampling radius. After the fixed rungs the
// confirmation cascade keeps quartering until the sampling radius is
// negligible against the pair chord: anchors with interior midpoints then
// stop triggering, because probes near enough to the anchor land inside.
inline constexpr int kPrefixRequired = 3;
inline constexpr int kConfirmScales = 2;
inline constexpr double kConfirmFloor = 1e-9;
inline constexpr double kConfirmScaleFloor = 1e-5;  // relative to 1 + ||v||
inline constexpr double kVGuardFraction = 0.1;
inline constexpr double kScaleFraction = 0.128;
inline constexpr int kResamplePasses = 3;
inline constexpr int kCandidatesPerPool = 8;

SearchReport lnc_search(const BodyPtr& Q, const ToolConfig& cfg,
                        std::uint64_t seed);

}  // namespace lnc
