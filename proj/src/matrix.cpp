#include "distill/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace distill {

Mat tensor(const Mat& A, const Mat& B) {
    Mat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

Mat direct_sum(std::span<const Mat> blocks) {
    Eigen::Index n = 0;
    for (const Mat& b : blocks) {
        if (b.rows() != b.cols()) throw std::invalid_argument("direct_sum: non-square block");
        n += b.rows();
    }
    Mat out = Mat::Zero(n, n);
    Eigen::Index off = 0;
    for (const Mat& b : blocks) {
        out.block(off, off, b.rows(), b.rows()) = b;
        off += b.rows();
    }
    return out;
}

Mat partial_transpose(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (M.rows() != dim_a * dim_b || M.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_transpose: dimension mismatch");
    Mat out(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < dim_a; ++i)
        for (Eigen::Index j = 0; j < dim_a; ++j)
            out.block(j * dim_b, i * dim_b, dim_b, dim_b) =
                M.block(i * dim_b, j * dim_b, dim_b, dim_b);
    return out;
}

Mat partial_trace_second(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (M.rows() != dim_a * dim_b || M.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace_second: dimension mismatch");
    Mat out(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
        for (Eigen::Index j = 0; j < dim_a; ++j)
            out(i, j) = M.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
}

Mat partial_trace_first(const Mat& M, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (M.rows() != dim_a * dim_b || M.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace_first: dimension mismatch");
    Mat out = Mat::Zero(dim_b, dim_b);
    for (Eigen::Index i = 0; i < dim_a; ++i)
        out += M.block(i * dim_b, i * dim_b, dim_b, dim_b);
    return out;
}

SpectralSummary singular_values(const Mat& M, Eigen::Index k) {
    if (k > std::min(M.rows(), M.cols()))
        throw std::invalid_argument("singular_values: k exceeds min dimension");
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SpectralSummary s;
    s.values = svd.singularValues().head(k);
    Eigen::Index top = std::min<Eigen::Index>(2, k);
    s.left_pair = svd.matrixU().leftCols(top);
    s.right_pair = svd.matrixV().leftCols(top);
    return s;
}

std::pair<RVec, Mat> hermitian_eigs(const Mat& M) {
    double scale = M.norm();
    if ((M - M.adjoint()).norm() > kHermTol * std::max(scale, 1e-300))
        throw std::invalid_argument("hermitian_eigs: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((M + M.adjoint()) / 2.0);
    // Eigen returns ascending order; flip to nonincreasing.
    RVec vals = es.eigenvalues().reverse();
    Mat vecs = es.eigenvectors().rowwise().reverse();
    return {vals, vecs};
}

bool is_normal(const Mat& M, double rel_tol) {
    double s2 = M.squaredNorm();
    if (s2 == 0.0) return true;
    return (M * M.adjoint() - M.adjoint() * M).norm() <= rel_tol * s2;
}

CVec normal_eigenvalues(const Mat& M) {
    Eigen::ComplexSchur<Mat> schur(M, /*computeU=*/false);
    return schur.matrixT().diagonal();
}

Mat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = Complex(g(rng), g(rng));
    return out;
}

Mat random_real(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = Complex(g(rng), 0.0);
    return out;
}

Mat random_unitary(Eigen::Index d, std::mt19937_64& rng) {
    Mat G = random_complex(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(d, d);
    // Fix the phase of R's diagonal so the distribution is Haar.
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        Complex r = R(i, i);
        Q.col(i) *= (std::abs(r) > 0) ? r / std::abs(r) : Complex(1, 0);
    }
    return Q;
}

}  // namespace distill
