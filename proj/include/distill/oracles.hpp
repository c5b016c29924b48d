#pragma once

#include <Eigen/Dense>
#include <optional>

namespace distill {

struct RayleighCheck {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

// Sum a_i x_i^2 / Sum b_i x_i^2 <= max_i a_i / b_i, for b > 0 and x != 0.
RayleighCheck rayleigh_bound_check(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& x);

/// Quadratic instance of the constrained maximization
///   max x^T Q x + sum_i xi_i y_i^2
///   s.t. C x = 0,  sum tau_i x_i^2 + sum omega_i y_i^2 = r,
/// solved exactly by a generalized-eigenvalue reduction on the constraint
/// null space.
struct QuadraticInstance {
    Eigen::MatrixXd Q;      // N x N, symmetric
    Eigen::MatrixXd C;      // m x N (may have zero rows)
    Eigen::VectorXd xi;     // M
    Eigen::VectorXd tau;    // N, > 0
    Eigen::VectorXd omega;  // M, > 0
    double r = 1.0;         // > 0
};

// Exact constrained maximum: top generalized eigenvalue times r.
double exact_maximum(const QuadraticInstance& inst);

enum class DichotomyVerdict { max_equals_eta_r, y_star_zero, both, violated };

// Verifies: optimal value equals eta r (eta = max xi_i/omega_i), or some
// optimizer has y = 0. Throws when the constraints leave no feasible point.
DichotomyVerdict dichotomy_check(const QuadraticInstance& inst, double tol = 1e-9);

/// Instance of max x^T Q x subject to <c,x> + sum y_i = 0, <d_i,x> = 0 and
/// sum tau_i x_i^2 + sum y_i^2 = r. Requires the maximum to be positive.
struct EqualYInstance {
    Eigen::MatrixXd Q;    // N x N, symmetric
    Eigen::VectorXd c;    // N
    Eigen::MatrixXd D;    // m x N
    Eigen::VectorXd tau;  // N, > 0
    int M = 1;            // number of y variables
    double r = 1.0;
};

// True when every global maximizer has equal y components. Throws when the
// maximum is not positive (lemma hypothesis unmet).
bool equal_y_check(const EqualYInstance& inst, double tol = 1e-9);

// Independent soundness oracle: maximum of z^T P z over {z : z^T W z = r,
// L z = 0} by a spherical-angle grid of the given resolution followed by a
// local projected-gradient polish. Intended for small total dimension.
double grid_search_max(const Eigen::MatrixXd& P, const Eigen::MatrixXd& W,
                       const Eigen::MatrixXd& L, double r, double resolution);

// Randomized instance generators shared by the CLI and the test suites.
QuadraticInstance random_quadratic_instance(int N, int M, int m, std::uint64_t seed,
                                            std::uint64_t index);
EqualYInstance random_equal_y_instance(int N, int M, int m, std::uint64_t seed,
                                       std::uint64_t index);

}  // namespace distill
