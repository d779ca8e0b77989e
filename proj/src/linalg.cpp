#include "lnc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lnc/kernels.hpp"

namespace lnc {

namespace {
void check_same_dim(const Vector& a, const Vector& b, const char* who) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}
}  // namespace

double vdot(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "vdot");
    return kernels::ops().dot(a.data(), b.data(), a.size());
}

double vnorm2sq(const Vector& a) {
    return kernels::ops().nrm2sq(a.data(), a.size());
}

double vnorm(const Vector& a) { return std::sqrt(vnorm2sq(a)); }

double vdist(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "vdist");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Vector vadd(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "vadd");
    Vector r(a);
    kernels::ops().axpy(1.0, b.data(), r.data(), r.size());
    return r;
}

Vector vsub(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "vsub");
    Vector r(a);
    kernels::ops().axpy(-1.0, b.data(), r.data(), r.size());
    return r;
}

Vector vscale(double s, const Vector& a) {
    Vector r(a);
    kernels::ops().scal(s, r.data(), r.size());
    return r;
}

void vaxpy(double a, const Vector& x, Vector& y) {
    check_same_dim(x, y, "vaxpy");
    kernels::ops().axpy(a, x.data(), y.data(), y.size());
}

Vector vzero(std::size_t n) { return Vector(n, 0.0); }

bool all_finite(const Vector& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

Vector vunit(const Vector& a) {
    double n = vnorm(a);
    if (n < 1e-300) throw std::invalid_argument("vunit: zero vector");
    return vscale(1.0 / n, a);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols) throw std::invalid_argument("Matrix::apply: dim");
    Vector y(rows);
    kernels::ops().gemv(a.data(), rows, cols, x.data(), y.data());
    return y;
}

Vector Matrix::applyT(const Vector& y) const {
    if (y.size() != rows) throw std::invalid_argument("Matrix::applyT: dim");
    Vector x(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        kernels::ops().axpy(y[i], a.data() + i * cols, x.data(), cols);
    return x;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: dim");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k)
            kernels::ops().axpy(A(i, k), B.a.data() + k * B.cols,
                                C.a.data() + i * C.cols, B.cols);
    return C;
}

QR qr_decompose(const Matrix& A) {
    const std::size_t m = A.rows, n = A.cols;
    QR f;
    f.R = A;
    f.Q = Matrix::identity(m);
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    Matrix& R = f.R;
    Matrix& Q = f.Q;

    const std::size_t steps = std::min(m, n);
    Vector v(m);
    double first_pivot = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        // pivot: column with the largest remaining norm below row k
        std::size_t best = k;
        double best_norm = -1.0;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += R(i, j) * R(i, j);
            if (s > best_norm) {
                best_norm = s;
                best = j;
            }
        }
        if (best != k) {
            for (std::size_t i = 0; i < m; ++i)
                std::swap(R(i, k), R(i, best));
            std::swap(f.perm[k], f.perm[best]);
        }
        double colnorm = std::sqrt(std::max(0.0, best_norm));
        if (k == 0) first_pivot = colnorm;
        if (colnorm <= 1e-300 || colnorm <= 1e-14 * first_pivot) break;

        // Householder reflector for R[k:m, k]
        double alpha = (R(k, k) >= 0.0) ? -colnorm : colnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            v[i] = R(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 <= 1e-300) continue;
        double inv = 2.0 / vnorm2;

        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += v[i] * R(i, j);
            s *= inv;
            for (std::size_t i = k; i < m; ++i) R(i, j) -= s * v[i];
        }
        R(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) R(i, k) = 0.0;

        // Q <- Q H_k
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t j = k; j < m; ++j) s += Q(i, j) * v[j];
            s *= inv;
            for (std::size_t j = k; j < m; ++j) Q(i, j) -= s * v[j];
        }
    }

    double rmax = 0.0;
    for (std::size_t k = 0; k < steps; ++k)
        rmax = std::max(rmax, std::fabs(R(k, k)));
    f.rank = 0;
    if (rmax > 0.0) {
        for (std::size_t k = 0; k < steps; ++k)
            if (std::fabs(R(k, k)) > 1e-10 * rmax) ++f.rank;
    }
    return f;
}

Vector solve_lstsq(const Matrix& A, const Vector& b) {
    if (b.size() != A.rows) throw std::invalid_argument("solve_lstsq: dim");
    QR f = qr_decompose(A);
    const std::size_t r = f.rank, n = A.cols;
    Vector qtb = f.Q.applyT(b);
    Vector z(r, 0.0);
    for (std::size_t ii = r; ii-- > 0;) {
        double s = qtb[ii];
        for (std::size_t j = ii + 1; j < r; ++j) s -= f.R(ii, j) * z[j];
        z[ii] = s / f.R(ii, ii);
    }
    Vector x(n, 0.0);
    for (std::size_t j = 0; j < r; ++j) x[f.perm[j]] = z[j];
    return x;
}

EigenSym eig_sym(const Matrix& S) {
    if (S.rows != S.cols) throw std::invalid_argument("eig_sym: not square");
    const std::size_t n = S.rows;
    Matrix A = S;
    Matrix V = Matrix::identity(n);

    double frob2 = 0.0;
    for (double x : A.a) frob2 += x * x;
    const double off_tol = 1e-28 * std::max(1.0, frob2);
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < off_tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0)
                               ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                               : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = A(i, p), aiq = A(i, q);
                    A(i, p) = c * aip - s * aiq;
                    A(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    double apj = A(p, j), aqj = A(q, j);
                    A(p, j) = c * apj - s * aqj;
                    A(q, j) = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = V(i, p), viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return A(i, i) < A(j, j); });
    EigenSym e;
    e.values.resize(n);
    e.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] = A(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = V(i, order[j]);
    }
    return e;
}

LinearMap::LinearMap(Matrix M) : A(std::move(M)) {
    if (A.rows == 0 || A.cols == 0)
        throw std::invalid_argument("LinearMap: empty matrix");
    if (!all_finite(A.a)) throw std::invalid_argument("LinearMap: non-finite");
    QR f = qr_decompose(A.transposed());  // n x m
    rank = f.rank;
    const std::size_t n = A.cols;
    rowspace.reserve(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        Vector c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = f.Q(i, j);
        rowspace.push_back(std::move(c));
    }
    kernel.reserve(n - rank);
    for (std::size_t j = rank; j < n; ++j) {
        Vector c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = f.Q(i, j);
        kernel.push_back(std::move(c));
    }
}

Vector LinearMap::preimage_min_norm(const Vector& y) const {
    if (y.size() != A.rows)
        throw std::invalid_argument("preimage_min_norm: dim");
    if (rank == 0) return vzero(A.cols);
    // x = sum z_i * rowspace_i with (A * Rt) z ~ y
    Matrix B(A.rows, rank);
    for (std::size_t j = 0; j < rank; ++j) {
        Vector col = A.apply(rowspace[j]);
        for (std::size_t i = 0; i < A.rows; ++i) B(i, j) = col[i];
    }
    Vector z = solve_lstsq(B, y);
    Vector x = vzero(A.cols);
    for (std::size_t j = 0; j < rank; ++j) vaxpy(z[j], rowspace[j], x);
    return x;
}

std::vector<Vector> nullspace(const LinearMap& map) { return map.kernel; }

}  // namespace lnc
