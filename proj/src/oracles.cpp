#include "distill/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "distill/rng.hpp"

namespace distill {

RayleighCheck rayleigh_bound_check(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& x) {
    if (a.size() != b.size() || a.size() != x.size())
        throw std::invalid_argument("rayleigh_bound_check: size mismatch");
    if ((b.array() <= 0.0).any())
        throw std::invalid_argument("rayleigh_bound_check: b must be positive");
    if (x.squaredNorm() == 0.0)
        throw std::invalid_argument("rayleigh_bound_check: x must be nonzero");
    RayleighCheck out;
    Eigen::ArrayXd x2 = x.array().square();
    out.lhs = (a.array() * x2).sum() / (b.array() * x2).sum();
    out.rhs = (a.array() / b.array()).maxCoeff();
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

namespace {

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& L, int n) {
    if (L.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
    lu.setThreshold(1e-12);
    return lu.kernel();
}

struct ReducedSolution {
    double lambda_max = 0;
    Eigen::MatrixXd top_space;  // columns: z-space directions of the top eigenspace
};

// max z^T P z over {L z = 0, z^T W z = r}: top generalized eigenvalue of
// (N^T P N, N^T W N) on the kernel N of L; optimal value = lambda_max * r.
ReducedSolution reduce(const Eigen::MatrixXd& P, const Eigen::MatrixXd& W,
                       const Eigen::MatrixXd& L, double eig_tol = 1e-9) {
    int n = static_cast<int>(P.rows());
    Eigen::MatrixXd N = kernel_basis(L, n);
    if (N.cols() == 0) throw std::invalid_argument("reduce: infeasible constraints");
    Eigen::MatrixXd Pr = N.transpose() * P * N;
    Pr = (Pr + Pr.transpose()) / 2.0;
    Eigen::MatrixXd Wr = N.transpose() * W * N;
    Wr = (Wr + Wr.transpose()) / 2.0;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Pr, Wr);
    if (ges.info() != Eigen::Success) throw std::runtime_error("reduce: eigensolver failed");
    Eigen::VectorXd evals = ges.eigenvalues();
    double lmax = evals(evals.size() - 1);
    ReducedSolution out;
    out.lambda_max = lmax;
    double scale = std::max(1.0, std::abs(lmax));
    std::vector<int> top;
    for (int i = 0; i < evals.size(); ++i)
        if (evals(i) >= lmax - eig_tol * scale) top.push_back(i);
    out.top_space.resize(n, static_cast<int>(top.size()));
    for (size_t i = 0; i < top.size(); ++i)
        out.top_space.col(static_cast<int>(i)) = N * ges.eigenvectors().col(top[i]);
    return out;
}

}  // namespace

double exact_maximum(const QuadraticInstance& inst) {
    int N = static_cast<int>(inst.Q.rows());
    int M = static_cast<int>(inst.xi.size());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N + M, N + M);
    P.topLeftCorner(N, N) = (inst.Q + inst.Q.transpose()) / 2.0;
    P.bottomRightCorner(M, M) = inst.xi.asDiagonal();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N + M, N + M);
    W.topLeftCorner(N, N) = inst.tau.asDiagonal();
    W.bottomRightCorner(M, M) = inst.omega.asDiagonal();
    Eigen::MatrixXd L(inst.C.rows(), N + M);
    L << inst.C, Eigen::MatrixXd::Zero(inst.C.rows(), M);
    return reduce(P, W, L).lambda_max * inst.r;
}

DichotomyVerdict dichotomy_check(const QuadraticInstance& inst, double tol) {
    int N = static_cast<int>(inst.Q.rows());
    int M = static_cast<int>(inst.xi.size());
    if (M < 1) throw std::invalid_argument("dichotomy_check: requires at least one y variable");
    if (inst.r <= 0 || (inst.tau.array() <= 0).any() || (inst.omega.array() <= 0).any())
        throw std::invalid_argument("dichotomy_check: weights and r must be positive");

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N + M, N + M);
    P.topLeftCorner(N, N) = (inst.Q + inst.Q.transpose()) / 2.0;
    P.bottomRightCorner(M, M) = inst.xi.asDiagonal();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N + M, N + M);
    W.topLeftCorner(N, N) = inst.tau.asDiagonal();
    W.bottomRightCorner(M, M) = inst.omega.asDiagonal();
    Eigen::MatrixXd L(inst.C.rows(), N + M);
    L << inst.C, Eigen::MatrixXd::Zero(inst.C.rows(), M);

    ReducedSolution full = reduce(P, W, L);
    double opt = full.lambda_max * inst.r;
    double eta = (inst.xi.array() / inst.omega.array()).maxCoeff();
    double scale = std::max({1.0, std::abs(opt), std::abs(eta * inst.r)});
    bool branch_eta = std::abs(opt - eta * inst.r) <= tol * scale;

    // y* = 0 branch: the optimum is attained within the y = 0 subspace.
    bool branch_y0 = false;
    Eigen::MatrixXd Nx = kernel_basis(inst.C, N);
    if (Nx.cols() > 0) {
        Eigen::MatrixXd Qs = (inst.Q + inst.Q.transpose()) / 2.0;
        Eigen::MatrixXd Pr = Nx.transpose() * Qs * Nx;
        Pr = (Pr + Pr.transpose()) / 2.0;
        Eigen::MatrixXd Wr = Nx.transpose() * inst.tau.asDiagonal() * Nx;
        Wr = (Wr + Wr.transpose()) / 2.0;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Pr, Wr);
        double lx = ges.eigenvalues()(ges.eigenvalues().size() - 1);
        branch_y0 = lx >= full.lambda_max - tol * std::max(1.0, std::abs(full.lambda_max));
    }

    if (branch_eta && branch_y0) return DichotomyVerdict::both;
    if (branch_eta) return DichotomyVerdict::max_equals_eta_r;
    if (branch_y0) return DichotomyVerdict::y_star_zero;
    return DichotomyVerdict::violated;
}

bool equal_y_check(const EqualYInstance& inst, double tol) {
    int N = static_cast<int>(inst.Q.rows());
    int M = inst.M;
    if (M < 1) throw std::invalid_argument("equal_y_check: requires M >= 1");
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N + M, N + M);
    P.topLeftCorner(N, N) = (inst.Q + inst.Q.transpose()) / 2.0;
    Eigen::MatrixXd W = Eigen::MatrixXd::Identity(N + M, N + M);
    W.topLeftCorner(N, N) = inst.tau.asDiagonal();

    int m = static_cast<int>(inst.D.rows());
    Eigen::MatrixXd L(1 + m, N + M);
    L.row(0) << inst.c.transpose(), Eigen::RowVectorXd::Ones(M);
    if (m > 0) L.bottomRows(m) << inst.D, Eigen::MatrixXd::Zero(m, M);

    ReducedSolution sol = reduce(P, W, L);
    if (sol.lambda_max <= tol)
        throw std::invalid_argument("equal_y_check: no feasible point with positive objective");

    // Every global maximizer lies in the top eigenspace; the equal-y
    // condition is linear, so checking a basis suffices.
    for (int c = 0; c < sol.top_space.cols(); ++c) {
        Eigen::VectorXd z = sol.top_space.col(c).normalized();
        Eigen::VectorXd y = z.tail(M);
        double mean = y.mean();
        if ((y.array() - mean).abs().maxCoeff() > tol) return false;
    }
    return true;
}

QuadraticInstance random_quadratic_instance(int N, int M, int m, std::uint64_t seed,
                                            std::uint64_t index) {
    auto rng = make_stream(seed, index);
    std::normal_distribution<double> g(0.0, 1.0);
    QuadraticInstance inst;
    inst.Q.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) inst.Q(i, j) = g(rng);
    inst.Q = ((inst.Q + inst.Q.transpose()) / 2.0).eval();
    inst.C.resize(m, N);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < N; ++j) inst.C(i, j) = g(rng);
    inst.xi.resize(M);
    for (int i = 0; i < M; ++i) inst.xi(i) = g(rng);
    inst.tau.resize(N);
    for (int i = 0; i < N; ++i) inst.tau(i) = 0.1 + std::abs(g(rng));
    inst.omega.resize(M);
    for (int i = 0; i < M; ++i) inst.omega(i) = 0.1 + std::abs(g(rng));
    inst.r = 0.1 + std::abs(g(rng));
    return inst;
}

EqualYInstance random_equal_y_instance(int N, int M, int m, std::uint64_t seed,
                                       std::uint64_t index) {
    auto rng = make_stream(seed ^ 0x517eULL, index);
    std::normal_distribution<double> g(0.0, 1.0);
    EqualYInstance inst;
    inst.Q.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) inst.Q(i, j) = g(rng);
    inst.Q = ((inst.Q + inst.Q.transpose()) / 2.0).eval();
    // Shift Q positive definite so a positive objective value is feasible
    // (lemma hypothesis).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inst.Q);
    inst.Q += (std::abs(es.eigenvalues()(0)) + 0.5 + std::abs(g(rng))) *
              Eigen::MatrixXd::Identity(N, N);
    inst.c.resize(N);
    for (int i = 0; i < N; ++i) inst.c(i) = g(rng);
    inst.D.resize(m, N);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < N; ++j) inst.D(i, j) = g(rng);
    inst.tau.resize(N);
    for (int i = 0; i < N; ++i) inst.tau(i) = 0.1 + std::abs(g(rng));
    inst.M = M;
    inst.r = 0.1 + std::abs(g(rng));
    return inst;
}

double grid_search_max(const Eigen::MatrixXd& P, const Eigen::MatrixXd& W,
                       const Eigen::MatrixXd& L, double r, double resolution) {
    int n = static_cast<int>(P.rows());
    Eigen::MatrixXd N = kernel_basis(L, n);
    if (N.cols() == 0) throw std::invalid_argument("grid_search_max: infeasible constraints");
    int k = static_cast<int>(N.cols());

    // Change of variables: u on the unit sphere, z = sqrt(r) N Linv^T u.
    Eigen::MatrixXd Wr = N.transpose() * W * N;
    Wr = (Wr + Wr.transpose()) / 2.0;
    Eigen::LLT<Eigen::MatrixXd> llt(Wr);
    Eigen::MatrixXd Pr = N.transpose() * P * N;
    Pr = (Pr + Pr.transpose()) / 2.0;
    Eigen::MatrixXd Linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd M = Linv * Pr * Linv.transpose();
    M = (M + M.transpose()) / 2.0;

    double best = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_u = Eigen::VectorXd::Unit(k, 0);
    double ares = resolution / std::sqrt(r);  // angular resolution on the unit sphere

    if (k == 1) {
        best = M(0, 0);
    } else {
        Eigen::VectorXd angles = Eigen::VectorXd::Zero(k - 1);
        std::function<void(int)> scan = [&](int depth) {
            if (depth == k - 1) {
                Eigen::VectorXd u(k);
                double s = 1.0;
                for (int i = 0; i < k - 1; ++i) {
                    u(i) = s * std::cos(angles(i));
                    s *= std::sin(angles(i));
                }
                u(k - 1) = s;
                double val = u.dot(M * u);
                if (val > best) {
                    best = val;
                    best_u = u;
                }
                return;
            }
            double span = (depth == k - 2) ? 2.0 * M_PI : M_PI;
            int steps = std::max(2, static_cast<int>(std::ceil(span / ares)));
            for (int i = 0; i < steps; ++i) {
                angles(depth) = span * i / steps;
                scan(depth + 1);
            }
        };
        scan(0);
    }

    // Local polish: projected gradient ascent of the quadratic on the sphere.
    Eigen::VectorXd u = best_u;
    double f = u.dot(M * u);
    double step = 0.5;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd g = 2.0 * (M * u);
        g -= g.dot(u) * u;
        if (g.norm() < 1e-13 * std::max(1.0, std::abs(f))) break;
        double s = step;
        bool moved = false;
        while (s > 1e-16) {
            Eigen::VectorXd cand = (u + s * g).normalized();
            double fc = cand.dot(M * cand);
            if (fc > f) {
                u = cand;
                f = fc;
                step = std::min(2.0 * s, 1.0);
                moved = true;
                break;
            }
            s *= 0.5;
        }
        if (!moved) break;
    }
    return f * r;
}

}  // namespace distill
