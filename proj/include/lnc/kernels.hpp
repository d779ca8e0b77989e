#pragma once
#include <cstddef>

namespace lnc::kernels {

// Dense double-precision primitives behind everything in liblnc.
// One scalar reference implementation plus optional SIMD variants,
// selected once per process.
struct Ops {
    const char* name;
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*nrm2sq)(const double* x, std::size_t n);
    // y += a*x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    void (*scal)(double a, double* x, std::size_t n);
    // y = A*x, A row-major m x n
    void (*gemv)(const double* A, std::size_t m, std::size_t n,
                 const double* x, double* y);
};

const Ops& scalar_ops();

// True when this binary carries the AVX2 translation unit and the CPU
// reports avx2+fma.
bool avx2_available();

// Active set. Chosen on first use from LNC_KERNELS=scalar|avx2|auto
// (default auto: AVX2 when available).
const Ops& ops();

// Re-select by name; false when the named variant is unavailable.
bool force(const char* name);

}  // namespace lnc::kernels
