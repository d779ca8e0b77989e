#pragma once
#include <cstddef>
#include <vector>

namespace lnc {

using Vector = std::vector<double>;

double vdot(const Vector& a, const Vector& b);
double vnorm2sq(const Vector& a);
double vnorm(const Vector& a);
double vdist(const Vector& a, const Vector& b);
Vector vadd(const Vector& a, const Vector& b);
Vector vsub(const Vector& a, const Vector& b);
Vector vscale(double s, const Vector& a);
// y += a*x
void vaxpy(double a, const Vector& x, Vector& y);
Vector vzero(std::size_t n);
bool all_finite(const Vector& a);
// a / ||a||; throws on (near-)zero input
Vector vunit(const Vector& a);

// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t m, std::size_t n, double fill = 0.0)
        : rows(m), cols(n), a(m * n, fill) {}
    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const {
        return a[i * cols + j];
    }
    Vector apply(const Vector& x) const;   // A x
    Vector applyT(const Vector& y) const;  // A^T y
    Matrix transposed() const;
};

Matrix matmul(const Matrix& A, const Matrix& B);

// Householder QR with column pivoting: A P = Q R, Q full (m x m) orthogonal.
// rank decided by |R_kk| > 1e-10 * |R_00|.
struct QR {
    Matrix Q;                  // m x m
    Matrix R;                  // m x n, upper triangular up to the pivoting
    std::vector<std::size_t> perm;  // column j of R corresponds to A col perm[j]
    std::size_t rank = 0;
};
QR qr_decompose(const Matrix& A);

// Minimize ||A x - b||; returns the basic solution from the pivoted QR
// (free variables of a rank-deficient system set to zero).
Vector solve_lstsq(const Matrix& A, const Vector& b);

// Jacobi eigendecomposition of a symmetric matrix: S = V diag(w) V^T,
// eigenvalues ascending, eigenvectors in the columns of V.
struct EigenSym {
    Vector values;
    Matrix vectors;
};
EigenSym eig_sym(const Matrix& S);

// Dense linear map with its cached kernel/row-space factorization.
struct LinearMap {
    Matrix A;  // m x n
    std::vector<Vector> kernel;    // orthonormal, size n - rank
    std::vector<Vector> rowspace;  // orthonormal, size rank
    std::size_t rank = 0;

    explicit LinearMap(Matrix M);
    std::size_t rows() const { return A.rows; }
    std::size_t cols() const { return A.cols; }
    Vector apply(const Vector& x) const { return A.apply(x); }
    // Least-squares preimage of minimal norm (pseudo-inverse application).
    Vector preimage_min_norm(const Vector& y) const;
};

std::vector<Vector> nullspace(const LinearMap& map);

}  // namespace lnc
