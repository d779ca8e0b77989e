#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnc/body.hpp"
#include "lnc/config.hpp"
#include "lnc/lnc_analysis.hpp"

namespace lnc {

enum class OpennessVerdict { OPEN_AT, NOT_OPEN_AT };

struct OpennessTarget {
    Vector y;
    double dist;      // base point to nearest fiber point
    std::string how;  // "random", "grid", "bisect"
};

struct OpennessDecade {
    double rho;
    int checked = 0;  // targets whose fiber was fully verified
    int bad = 0;      // verified targets with dist >= threshold
    std::optional<OpennessTarget> worst;
};

struct OpennessReport {
    OpennessVerdict verdict = OpennessVerdict::OPEN_AT;
    Vector x0;
    Vector y0;
    double diam = 0.0;       // image diameter estimate
    double threshold = 0.0;  // distance making a target "bad"
    std::vector<OpennessDecade> decades;
};

// Probes openness of the restriction of T to Q at x0 in Q. Image targets at
// three shrinking radii around T(x0); a target is bad when every fiber point
// over it stays at least `threshold` away from x0. NOT_OPEN_AT needs a bad
// target in every decade, so moduli that improve with radius stay OPEN.
// threshold <= 0 picks 0.1 * diam.
OpennessReport openness_probe(const BodyPtr& Q, const LinearMap& T,
                              const Vector& x0, double threshold,
                              const ToolConfig& cfg, std::uint64_t seed);

enum class CrosscheckStatus { CLEAN, FALSIFICATION_CONSISTENT, CONTRADICTION };

struct CrosscheckProbe {
    std::string label;
    Vector point;
    OpennessVerdict verdict = OpennessVerdict::OPEN_AT;
};

struct CrosscheckReport {
    CrosscheckStatus status = CrosscheckStatus::CLEAN;
    SearchReport search;
    std::vector<CrosscheckProbe> probes;
    std::string image_status;  // NO_WITNESS | WITNESS | UNSUPPORTED_IMAGE
};

// Cross-validates the witness search against openness probes and, where the
// image of Q under T exists in closed form, a search on that image.
CrosscheckReport crosscheck(const BodyPtr& Q, const LinearMap& T,
                            const ToolConfig& cfg, std::uint64_t seed);

}  // namespace lnc
