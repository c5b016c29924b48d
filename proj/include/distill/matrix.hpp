#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <span>
#include <vector>

namespace distill {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Relative tolerances used by the spectral kernels.
constexpr double kSvdTol = 1e-12;
constexpr double kHermTol = 1e-12;

/// Ordered singular values plus the top-two singular vector pairs.
/// block_index is filled only when the values were collected from a
/// block-diagonal structure; it records the origin block of each value.
struct SpectralSummary {
    RVec values;                   // nonincreasing, >= 0
    std::vector<int> block_index;  // empty unless block provenance applies
    Mat left_pair;                 // rows x min(2,k) top left singular vectors
    Mat right_pair;                // cols x min(2,k) top right singular vectors
};

// Kronecker product: (i,j) block of the result is a_ij * B.
Mat tensor(const Mat& A, const Mat& B);

// Block-diagonal assembly of square blocks. Throws on a non-square block.
Mat direct_sum(std::span<const Mat> blocks);

// Partial transpose over the first factor of a (dim_a*dim_b)-dim bipartite
// operator: block (i,j) of the result equals block (j,i) of M.
Mat partial_transpose(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b);

// Block trace over the second factor: result(i,j) = tr M[block i,j].
Mat partial_trace_second(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b);

// Trace over the first factor: result = sum_i M[block i,i].
Mat partial_trace_first(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b);

// Top-k singular values (nonincreasing) with the top-two vector pairs.
SpectralSummary singular_values(const Mat& M, Eigen::Index k);

// Eigen-decomposition of a Hermitian matrix, eigenvalues nonincreasing.
// Throws std::invalid_argument when M is not Hermitian within
// kHermTol * ||M||_F.
std::pair<RVec, Mat> hermitian_eigs(const Mat& M);

// ||M M^H - M^H M||_F <= rel_tol * ||M||_F^2. Zero counts as normal.
bool is_normal(const Mat& M, double rel_tol = 1e-10);

// Eigenvalues of a normal matrix via the Schur form (diagonal for normal
// input). No ordering is guaranteed.
CVec normal_eigenvalues(const Mat& M);

// Random helpers (complex Gaussian entries; Haar unitary via QR).
Mat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
Mat random_real(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
Mat random_unitary(Eigen::Index d, std::mt19937_64& rng);

}  // namespace distill
