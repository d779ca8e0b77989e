#pragma once
#include <cstdint>

namespace lnc {

// Central tolerance/budget record. Serialized into every output artifact so
// runs can be reproduced from the artifact alone.
struct ToolConfig {
    double membership_tol = 1e-9;
    double fiber_tol = 1e-7;  // feasibility threshold for EMPTY_FIBER
    int solver_max_iter = 10000;
    double extent_cap = 1e3;
    double witness_margin = 1e-6;  // mu
    int eps_grid_depth = 12;       // grid {2^-1, ..., 2^-depth} applied to v
    int search_pairs = 200;
    int search_scales = 3;
    std::uint64_t seed = 42;
};

}  // namespace lnc
