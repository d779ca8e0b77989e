#include "lnc/kernels.hpp"

namespace lnc::kernels {
namespace {

double dot_(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double nrm2sq_(const double* x, std::size_t n) { return dot_(x, x, n); }

void axpy_(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void gemv_(const double* A, std::size_t m, std::size_t n, const double* x,
           double* y) {
    for (std::size_t r = 0; r < m; ++r) y[r] = dot_(A + r * n, x, n);
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops k{"scalar", dot_, nrm2sq_, axpy_, scal_, gemv_};
    return k;
}

}  // namespace lnc::kernels
