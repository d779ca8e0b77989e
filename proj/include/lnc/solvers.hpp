#pragma once
#include <functional>
#include <stdexcept>
#include <vector>

#include "lnc/linalg.hpp"

namespace lnc {

class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// ---- Linear programming (dense two-phase simplex, Bland's rule) ----

enum class LpStatus { OPTIMAL, UNBOUNDED, INFEASIBLE };

struct LpResult {
    LpStatus status;
    Vector x;          // primal solution (original variables)
    double objective;  // c^T x at the optimum
    Vector dual;       // row duals of the standard form (empty if not OPTIMAL)
    double dual_objective;  // certified lower bound y^T b for min problems
};

// Row senses: -1 means <=, 0 means ==, +1 means >=.
struct LinearProgram {
    Matrix A;
    Vector b;
    std::vector<int> sense;
    Vector c;                // minimized
    std::vector<double> lo;  // variable lower bounds, -inf allowed
    std::vector<double> hi;  // variable upper bounds, +inf allowed
};

LpResult lp_solve(const LinearProgram& lp, int max_pivots = 10000);

// min c^T x s.t. A x = b, x >= 0. Exposed for the duality-gap tests.
LpResult lp_solve_standard(const Matrix& A, const Vector& b, const Vector& c,
                           int max_pivots = 10000);

// Phase-1 feasibility value for A x = b, x >= 0 (sum of artificials at
// optimum; 0 within tolerance iff feasible). Returns the feasible point
// when one exists.
struct FeasibilityResult {
    double infeasibility;
    Vector x;
};
FeasibilityResult lp_feasible_point(const Matrix& A, const Vector& b,
                                    int max_pivots = 10000);

// ---- Quadratic projections ----

// min ||x - p||^2 s.t. A x <= b, primal active set from a feasible seed.
// Rows of A must be unit normalized.
Vector project_onto_hpolytope(const Matrix& A, const Vector& b,
                              const Vector& p, const Vector& feasible_seed,
                              int max_iter = 10000);

// min ||sum l_i v_i - p||^2 over the probability simplex; returns l.
Vector nearest_convex_coefficients(const std::vector<Vector>& vertices,
                                   const Vector& p, int max_iter = 10000);

// min ||c + G t - p||^2 over t in [0,1]^k; returns t. Columns of G are the
// generators.
Vector nearest_box_coefficients(const Matrix& G, const Vector& d,
                                int max_iter = 10000);

// Euclidean projection onto the probability simplex (sum = 1, x >= 0).
Vector project_simplex(const Vector& y);

// ---- Alternating projections ----

using Projector = std::function<Vector(const Vector&)>;

struct DykstraResult {
    Vector point;
    int iterations;
    bool converged;   // increments settled below tol
    double residual;  // last cycle's max projector displacement
};

// Dykstra's algorithm for the intersection of closed convex sets given by
// exact projectors. Converges to the projection of start onto the
// intersection when it is nonempty.
DykstraResult dykstra(const std::vector<Projector>& projectors,
                      const Vector& start, int max_iter = 10000,
                      double tol = 1e-10);

// ---- 1-D minimization ----

// Golden-section minimum of a unimodal f on [lo, hi]; returns argmin.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-12, int max_iter = 200);

}  // namespace lnc
