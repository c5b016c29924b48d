#include "distill/werner.hpp"

#include <Eigen/SVD>
#include <limits>
#include <stdexcept>

#include "distill/parallel.hpp"
#include "distill/rng.hpp"

namespace distill {

Mat swap_operator(int d) {
    Mat F = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) F(i * d + k, k * d + i) = 1.0;
    return F;
}

Mat max_entangled_projector(int d) {
    CVec phi = CVec::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
    return phi * phi.adjoint();
}

Mat werner_density(int d, double alpha, bool paper_sign) {
    if (d < 2) throw std::invalid_argument("werner_density: d must be >= 2");
    if (std::abs(alpha) > 1.0) throw std::invalid_argument("werner_density: |alpha| <= 1 required");
    Mat I = Mat::Identity(d * d, d * d);
    Mat F = swap_operator(d);
    if (paper_sign) return (I + alpha * F) / (d * d + alpha * d);
    return (I - alpha * F) / (d * d - alpha * d);
}

double ppt_min_eig(int d, double alpha) {
    Mat rho_pt = partial_transpose(werner_density(d, alpha), d, d);
    auto [vals, vecs] = hermitian_eigs(rho_pt);
    return vals(vals.size() - 1);
}

std::string werner_class_name(WernerClass c) {
    switch (c) {
        case WernerClass::separable: return "separable";
        case WernerClass::npt_one_distillable: return "npt_one_distillable";
        case WernerClass::npt_one_undistillable: return "npt_one_undistillable";
    }
    return "unknown";
}

WernerClass classify(int d, double alpha) {
    if (d < 2 || std::abs(alpha) > 1.0) throw std::invalid_argument("classify: bad arguments");
    if (alpha <= 1.0 / d) return WernerClass::separable;
    if (alpha > 0.5) return WernerClass::npt_one_distillable;
    return WernerClass::npt_one_undistillable;
}

namespace {

// Schmidt truncation: reshape to dim_a x dim_b, keep the top two singular
// triplets, renormalize to a unit vector.
struct Rank2State {
    CVec psi;
    double p1 = 0, p2 = 0;
    Mat u_pair, v_pair;
};

Rank2State truncate_rank2(const CVec& raw, int dim_a, int dim_b) {
    Mat M(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int k = 0; k < dim_b; ++k) M(i, k) = raw(i * dim_b + k);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double s1 = svd.singularValues()(0);
    double s2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
    double norm = std::hypot(s1, s2);
    if (norm <= 0.0) throw std::invalid_argument("truncate_rank2: zero state");
    Rank2State st;
    st.p1 = s1 / norm;
    st.p2 = s2 / norm;
    st.u_pair = svd.matrixU().leftCols(2);
    // |psi> = sum_s p_s u_s (x) conj(v_s) for M = sum_s sigma_s u_s v_s^H.
    st.v_pair = svd.matrixV().leftCols(2).conjugate();
    Mat M2 = st.p1 * st.u_pair.col(0) * st.v_pair.col(0).transpose() +
             st.p2 * st.u_pair.col(1) * st.v_pair.col(1).transpose();
    st.psi.resize(dim_a * dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int k = 0; k < dim_b; ++k) st.psi(i * dim_b + k) = M2(i, k);
    return st;
}

// Alternating eigenvalue steps. With the right Schmidt frame R fixed, rank-2
// vectors sum_s g_s (x) conj(R.col(s)) form a 2*dim_a dimensional subspace, so
// the minimum of <psi,H psi> over it is an exact small eigenproblem; likewise
// with the left frame fixed. Each half-step is a global minimum over a set
// containing the current iterate, so the value is monotone nonincreasing.
Rank2State witness_descend(const Mat& H, int dim_a, int dim_b, std::mt19937_64& rng,
                           int max_iters) {
    const int n = dim_a * dim_b;
    Mat u = random_complex(dim_a, 2, rng);
    Mat v = random_complex(dim_b, 2, rng);
    Eigen::HouseholderQR<Mat> qu(u), qv(v);
    Mat L = qu.householderQ() * Mat::Identity(dim_a, 2);
    Mat R = qv.householderQ() * Mat::Identity(dim_b, 2);

    auto refresh_frames = [&](const CVec& psi) {
        Mat M(dim_a, dim_b);
        for (int i = 0; i < dim_a; ++i)
            for (int k = 0; k < dim_b; ++k) M(i, k) = psi(i * dim_b + k);
        Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        L = svd.matrixU().leftCols(2);
        R = svd.matrixV().leftCols(2);
    };
    auto solve_in = [&](const Mat& B, CVec& psi) {
        Mat K = B.adjoint() * (H * B);
        Eigen::SelfAdjointEigenSolver<Mat> es((K + K.adjoint()) / 2.0);
        psi = B * es.eigenvectors().col(0);
        return es.eigenvalues()(0);
    };

    CVec psi;
    double f = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        Mat BR = Mat::Zero(n, 2 * dim_a);
        for (int s = 0; s < 2; ++s)
            for (int i = 0; i < dim_a; ++i)
                for (int j = 0; j < dim_b; ++j)
                    BR(i * dim_b + j, s * dim_a + i) = std::conj(R(j, s));
        solve_in(BR, psi);
        refresh_frames(psi);

        Mat BL = Mat::Zero(n, 2 * dim_b);
        for (int s = 0; s < 2; ++s)
            for (int i = 0; i < dim_a; ++i)
                for (int j = 0; j < dim_b; ++j) BL(i * dim_b + j, s * dim_b + j) = L(i, s);
        double fc = solve_in(BL, psi);
        refresh_frames(psi);

        if (f - fc < 1e-15 * (1.0 + std::abs(fc))) {
            f = fc;
            break;
        }
        f = fc;
    }
    return truncate_rank2(psi, dim_a, dim_b);
}

}  // namespace

WitnessResult witness_min(const Mat& rho, int dim_a, int dim_b, int restarts,
                          std::uint64_t seed, int max_iters) {
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
        throw std::invalid_argument("witness_min: dimension mismatch");
    Mat H = partial_transpose(rho, dim_a, dim_b);
    H = (H + H.adjoint()) / 2.0;

    std::vector<Rank2State> states(restarts);
    std::vector<double> values(restarts);
    parallel_for(restarts, [&](std::int64_t i) {
        auto rng = make_stream(seed, static_cast<std::uint64_t>(i));
        states[i] = witness_descend(H, dim_a, dim_b, rng, max_iters);
        values[i] = (states[i].psi.adjoint() * H * states[i].psi)(0).real();
    });

    int best = 0;
    for (int i = 1; i < restarts; ++i)
        if (values[i] < values[best]) best = i;
    WitnessResult out;
    out.min_value = values[best];
    out.psi = states[best].psi;
    out.p1 = states[best].p1;
    out.p2 = states[best].p2;
    out.u_pair = states[best].u_pair;
    out.v_pair = states[best].v_pair;
    out.restarts_used = restarts;
    return out;
}

Mat tensor_square_regrouped(const Mat& rho, int d) {
    if (rho.rows() != d * d || rho.cols() != d * d)
        throw std::invalid_argument("tensor_square_regrouped: dimension mismatch");
    Mat r2 = tensor(rho, rho);  // basis |i1 j1 i2 j2>
    int n = d * d * d * d;
    Mat out(n, n);
    // target basis |i1 i2 j1 j2>
    auto src = [d](int i1, int i2, int j1, int j2) {
        return ((i1 * d + j1) * d + i2) * d + j2;
    };
    auto dst = [d](int i1, int i2, int j1, int j2) {
        return ((i1 * d + i2) * d + j1) * d + j2;
    };
    for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2)
            for (int j1 = 0; j1 < d; ++j1)
                for (int j2 = 0; j2 < d; ++j2)
                    for (int k1 = 0; k1 < d; ++k1)
                        for (int k2 = 0; k2 < d; ++k2)
                            for (int l1 = 0; l1 < d; ++l1)
                                for (int l2 = 0; l2 < d; ++l2)
                                    out(dst(i1, i2, j1, j2), dst(k1, k2, l1, l2)) =
                                        r2(src(i1, i2, j1, j2), src(k1, k2, l1, l2));
    return out;
}

WitnessResult two_copy_search(double alpha, int restarts, std::uint64_t seed) {
    if (!(alpha > 0.25 && alpha <= 0.5))
        throw std::invalid_argument("two_copy_search: alpha must lie in (1/4, 1/2]");
    const int d = 4;
    Mat rho = werner_density(d, alpha);
    Mat sigma = tensor_square_regrouped(rho, d);
    return witness_min(sigma, d * d, d * d, restarts, seed, 800);
}

}  // namespace distill
