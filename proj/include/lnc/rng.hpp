#pragma once
#include <cstdint>

#include "lnc/linalg.hpp"

namespace lnc {

// splitmix64-based generator. Hand-rolled distributions so that streams are
// bit-identical across compilers and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Independent substream addressed by index; depends only on the
    // construction seed, not on how much of this stream was consumed.
    Rng child(std::uint64_t index) const;

    std::uint64_t next_u64();
    double uniform();  // [0, 1) with 53 random bits
    double uniform(double lo, double hi);
    double normal();  // standard normal, Box-Muller
    std::size_t index(std::size_t n);  // uniform over {0, ..., n-1}, n >= 1
    Vector unit_vector(std::size_t dim);
    Vector in_box(const Vector& lo, const Vector& hi);

private:
    std::uint64_t seed0_;
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lnc
