#include <doctest.h>

#include "distill/matrix.hpp"
#include "distill/rng.hpp"

using namespace distill;

namespace {

Mat unit_matrix(int d, int i, int j) {
    Mat E = Mat::Zero(d, d);
    E(i, j) = 1.0;
    return E;
}

}  // namespace

TEST_CASE("tensor places blocks by the left factor's entries") {
    Mat E11 = unit_matrix(2, 0, 0), E22 = unit_matrix(2, 1, 1);
    Mat T = tensor(E11, E22);
    REQUIRE(T.rows() == 4);
    REQUIRE(T.cols() == 4);
    CHECK(T(1, 1) == Complex(1.0, 0.0));
    CHECK(T.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));

    auto rng = make_stream(11, 0);
    Mat A = random_complex(3, 2, rng), B = random_complex(4, 5, rng);
    Mat AB = tensor(A, B);
    REQUIRE(AB.rows() == 12);
    REQUIRE(AB.cols() == 10);
    // (i,j) block equals a_ij * B
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK((AB.block(4 * i, 5 * j, 4, 5) - A(i, j) * B).norm() < 1e-14);
    CHECK(AB.norm() == doctest::Approx(A.norm() * B.norm()).epsilon(1e-13));
}

TEST_CASE("direct_sum stacks square blocks and rejects others") {
    auto rng = make_stream(12, 0);
    std::vector<Mat> blocks = {random_complex(2, 2, rng), random_complex(3, 3, rng)};
    Mat S = direct_sum(blocks);
    REQUIRE(S.rows() == 5);
    CHECK((S.topLeftCorner(2, 2) - blocks[0]).norm() == 0.0);
    CHECK((S.bottomRightCorner(3, 3) - blocks[1]).norm() == 0.0);
    CHECK(S.topRightCorner(2, 3).norm() == 0.0);

    std::vector<Mat> bad = {random_complex(2, 3, rng)};
    CHECK_THROWS_AS(direct_sum(bad), std::invalid_argument);
}

TEST_CASE("partial_transpose is an involution and transposes the first factor") {
    auto rng = make_stream(13, 0);
    Mat M = random_complex(6, 6, rng);
    Mat Mpt = partial_transpose(M, 2, 3);
    CHECK((partial_transpose(Mpt, 2, 3) - M).norm() < 1e-15);
    // block (i,j) of the result equals block (j,i) of M
    CHECK((Mpt.block(0, 3, 3, 3) - M.block(3, 0, 3, 3)).norm() == 0.0);

    // tensor factors: (A (x) B)^Gamma = A^T (x) B
    Mat A = random_complex(2, 2, rng), B = random_complex(3, 3, rng);
    CHECK((partial_transpose(tensor(A, B), 2, 3) - tensor(A.transpose(), B)).norm() < 1e-14);
}

TEST_CASE("partial traces reduce tensor products to scaled factors") {
    auto rng = make_stream(14, 0);
    Mat A = random_complex(3, 3, rng), B = random_complex(4, 4, rng);
    Mat AB = tensor(A, B);
    CHECK((partial_trace_second(AB, 3, 4) - B.trace() * A).norm() < 1e-13);
    CHECK((partial_trace_first(AB, 3, 4) - A.trace() * B).norm() < 1e-13);
    CHECK(std::abs(partial_trace_second(AB, 3, 4).trace() - AB.trace()) < 1e-13);
}

TEST_CASE("singular_values ordering, Gram consistency, and top pairs") {
    auto rng = make_stream(15, 0);
    for (int rep = 0; rep < 20; ++rep) {
        Mat M = random_complex(5, 7, rng);
        SpectralSummary s = singular_values(M, 5);
        for (int i = 0; i + 1 < s.values.size(); ++i) CHECK(s.values(i) >= s.values(i + 1));
        auto [lam, vecs] = hermitian_eigs(M * M.adjoint());
        for (int i = 0; i < s.values.size(); ++i)
            CHECK(s.values(i) * s.values(i) ==
                  doctest::Approx(lam(i)).epsilon(1e-10).scale(1.0));
        // M v_i = sigma_i u_i for the top two
        for (int i = 0; i < 2; ++i)
            CHECK((M * s.right_pair.col(i) - s.values(i) * s.left_pair.col(i)).norm() < 1e-10);
    }
}

TEST_CASE("singular values are unitarily invariant") {
    auto rng = make_stream(16, 0);
    for (int rep = 0; rep < 10; ++rep) {
        Mat M = random_complex(6, 6, rng);
        Mat U = random_unitary(6, rng), V = random_unitary(6, rng);
        RVec s0 = singular_values(M, 6).values;
        RVec s1 = singular_values(U * M * V, 6).values;
        CHECK((s0 - s1).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("hermitian_eigs validates input and orders eigenvalues") {
    auto rng = make_stream(17, 0);
    Mat M = random_complex(5, 5, rng);
    Mat H = (M + M.adjoint()) / 2.0;
    auto [vals, vecs] = hermitian_eigs(H);
    for (int i = 0; i + 1 < vals.size(); ++i) CHECK(vals(i) >= vals(i + 1));
    CHECK((H * vecs.col(0) - vals(0) * vecs.col(0)).norm() < 1e-12);
    CHECK_THROWS_AS(hermitian_eigs(M), std::invalid_argument);
}

TEST_CASE("is_normal and normal_eigenvalues") {
    auto rng = make_stream(18, 0);
    Mat U = random_unitary(4, rng);
    CVec diag(4);
    for (int i = 0; i < 4; ++i) diag(i) = Complex(i - 1.5, 0.3 * i);
    Mat N = U * diag.asDiagonal() * U.adjoint();
    CHECK(is_normal(N));
    CHECK(is_normal(Mat::Zero(3, 3)));

    Mat J = Mat::Zero(3, 3);
    J(0, 1) = 1.0;
    CHECK(!is_normal(J));

    CVec ev = normal_eigenvalues(N);
    std::vector<double> got, want;
    for (int i = 0; i < 4; ++i) {
        got.push_back(ev(i).real());
        want.push_back(diag(i).real());
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("Weyl inequality for singular values of sums") {
    auto rng = make_stream(19, 0);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 3 + static_cast<int>(rep % 4);
        Mat A = random_complex(n, n, rng), B = random_complex(n, n, rng);
        RVec sa = singular_values(A, n).values;
        RVec sb = singular_values(B, n).values;
        RVec sab = singular_values(A + B, n).values;
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j + 1 < n + 1 && j < n; ++j)
                CHECK(sab(i + j) <= sa(i) + sb(j) + 1e-10);
    }
}

TEST_CASE("random_unitary is unitary and streams are deterministic") {
    auto rng1 = make_stream(20, 3);
    auto rng2 = make_stream(20, 3);
    Mat U1 = random_unitary(5, rng1), U2 = random_unitary(5, rng2);
    CHECK((U1 - U2).norm() == 0.0);
    CHECK((U1.adjoint() * U1 - Mat::Identity(5, 5)).norm() < 1e-13);

    auto rng3 = make_stream(20, 4);
    CHECK((random_unitary(5, rng3) - U1).norm() > 1e-3);
}
