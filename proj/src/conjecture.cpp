#include "distill/conjecture.hpp"

#include <nlohmann/json.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distill {

double bound(int d) {
    if (d < 2) throw std::invalid_argument("bound: d must be >= 2");
    return (3.0 * d - 4.0) / (double(d) * d);
}

FeasiblePoint project_to_feasible(const Mat& A0, const Mat& B0) {
    if (A0.rows() != A0.cols() || B0.rows() != B0.cols() || A0.rows() != B0.rows())
        throw std::invalid_argument("project_to_feasible: inputs must be square and same size");
    int d = static_cast<int>(A0.rows());
    Mat A = A0 - (A0.trace() / double(d)) * Mat::Identity(d, d);
    Mat B = B0 - (B0.trace() / double(d)) * Mat::Identity(d, d);
    double n2 = A.squaredNorm() + B.squaredNorm();
    if (n2 <= 0.0)
        throw std::invalid_argument("project_to_feasible: degenerate input (both proportional to I)");
    double s = std::sqrt(1.0 / (d * n2));
    return {d, s * A, s * B};
}

Mat assemble_X(const FeasiblePoint& p) {
    Mat I = Mat::Identity(p.d, p.d);
    return tensor(p.A, I) + tensor(I, p.B);
}

FeasiblePoint extremal_point(int d) {
    if (d < 4) throw std::invalid_argument("extremal_point: requires d >= 4");
    double beta = 1.0 / (d * std::sqrt(6.0 * d - 8.0));
    RVec a(d), b(d);
    a.setConstant(-2.0 * beta);
    a(0) = 2.0 * (d - 1) * beta;
    b.setConstant(-2.0 * beta);
    b(0) = b(1) = (d - 2.0) * beta;
    FeasiblePoint p;
    p.d = d;
    p.A = a.cast<Complex>().asDiagonal();
    p.B = b.cast<Complex>().asDiagonal();
    return p;
}

namespace {

double top_two_square_sum(std::vector<double>& vals) {
    std::partial_sort(vals.begin(), vals.begin() + 2, vals.end(), std::greater<>());
    return vals[0] * vals[0] + vals[1] * vals[1];
}

double objective_both_normal(const FeasiblePoint& p) {
    CVec ea = normal_eigenvalues(p.A);
    CVec eb = normal_eigenvalues(p.B);
    std::vector<double> vals;
    vals.reserve(p.d * p.d);
    for (int i = 0; i < p.d; ++i)
        for (int j = 0; j < p.d; ++j) vals.push_back(std::abs(ea(i) + eb(j)));
    return top_two_square_sum(vals);
}

// Diagonalize normal A; the singular values of X are the union of the
// singular values of the blocks a_i I + B (B is untouched by U (x) I).
double objective_block(const FeasiblePoint& p) {
    CVec ea = normal_eigenvalues(p.A);
    std::vector<double> vals;
    vals.reserve(2 * p.d);
    Mat I = Mat::Identity(p.d, p.d);
    for (int i = 0; i < p.d; ++i) {
        SpectralSummary s = singular_values(ea(i) * I + p.B, 2);
        vals.push_back(s.values(0));
        vals.push_back(s.values(1));
    }
    return top_two_square_sum(vals);
}

double objective_dense(const FeasiblePoint& p) {
    SpectralSummary s = singular_values(assemble_X(p), 2);
    return s.values(0) * s.values(0) + s.values(1) * s.values(1);
}

}  // namespace

double objective(const FeasiblePoint& p, ObjectivePath path) {
    switch (path) {
        case ObjectivePath::dense:
            return objective_dense(p);
        case ObjectivePath::eig_both_normal:
            if (!is_normal(p.A) || !is_normal(p.B))
                throw std::invalid_argument("objective: eig path requires both matrices normal");
            return objective_both_normal(p);
        case ObjectivePath::block_diag_a:
            if (!is_normal(p.A))
                throw std::invalid_argument("objective: block path requires normal A");
            return objective_block(p);
        case ObjectivePath::automatic:
            break;
    }
    bool na = is_normal(p.A), nb = is_normal(p.B);
    if (na && nb) return objective_both_normal(p);
    if (na) return objective_block(p);
    if (nb) {
        // sigma(A (x) I + I (x) B) = sigma(B (x) I + I (x) A)
        FeasiblePoint q{p.d, p.B, p.A};
        return objective_block(q);
    }
    return objective_dense(p);
}

FeasiblePoint apply_transform(const FeasiblePoint& p, Transform which, const TransformArgs& args) {
    FeasiblePoint q = p;
    switch (which) {
        case Transform::transpose:
            q.A = p.A.transpose();
            q.B = p.B.transpose();
            break;
        case Transform::conjugate:
            q.A = p.A.conjugate();
            q.B = p.B.conjugate();
            break;
        case Transform::adjoint:
            q.A = p.A.adjoint();
            q.B = p.B.adjoint();
            break;
        case Transform::swap_factors:
            q.A = p.B;
            q.B = p.A;
            break;
        case Transform::phase: {
            Complex ph = std::polar(1.0, args.theta);
            q.A = ph * p.A;
            q.B = ph * p.B;
            break;
        }
        case Transform::local_unitary: {
            if (!args.U || !args.V)
                throw std::invalid_argument("apply_transform: local_unitary needs U and V");
            const Mat& U = *args.U;
            const Mat& V = *args.V;
            auto unitary = [](const Mat& M) {
                return (M * M.adjoint() - Mat::Identity(M.rows(), M.rows())).norm() <
                       1e-10 * std::sqrt(double(M.rows()));
            };
            if (!unitary(U) || !unitary(V))
                throw std::invalid_argument("apply_transform: U, V must be unitary");
            q.A = U * p.A * U.adjoint();
            q.B = V * p.B * V.adjoint();
            break;
        }
    }
    return q;
}

BlockSpectrum block_spectrum(const FeasiblePoint& p) {
    Mat offdiag = p.A;
    offdiag.diagonal().setZero();
    if (offdiag.cwiseAbs().maxCoeff() >= 1e-14)
        throw std::invalid_argument("block_spectrum: A must be diagonal");
    std::vector<std::pair<double, int>> tagged;
    tagged.reserve(p.d * p.d);
    Mat I = Mat::Identity(p.d, p.d);
    for (int i = 0; i < p.d; ++i) {
        SpectralSummary s = singular_values(p.A(i, i) * I + p.B, p.d);
        for (int j = 0; j < p.d; ++j) tagged.emplace_back(s.values(j), i);
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    BlockSpectrum out;
    out.summary.values.resize(static_cast<Eigen::Index>(tagged.size()));
    out.summary.block_index.reserve(tagged.size());
    for (size_t i = 0; i < tagged.size(); ++i) {
        out.summary.values(static_cast<Eigen::Index>(i)) = tagged[i].first;
        out.summary.block_index.push_back(tagged[i].second);
    }
    out.top_two_same_block = tagged[0].second == tagged[1].second;
    return out;
}

double BlockClosedForm::k() const {
    return (a1 + b11) * (a1 + b11) + b21 * b21 + b12 * b12 + (a2 + b22) * (a2 + b22);
}

double BlockClosedForm::m() const {
    return b12 * b12 - b21 * b21 + (a2 + b11) * (a2 + b11) - (a2 + b22) * (a2 + b22);
}

double BlockClosedForm::n() const {
    return 2.0 * b12 * (a2 + b22) + 2.0 * b21 * (a2 + b11);
}

double h_at(const BlockClosedForm& cf, double t) {
    return cf.k() + (cf.m() + cf.n() * t) / (1.0 + t * t);
}

double h_closed_form(const BlockClosedForm& cf) { return h_at(cf, cf.t()); }

double h_sup(const BlockClosedForm& cf) {
    double k = cf.k(), m = cf.m(), n = cf.n();
    if (n == 0.0) return std::max(k + m, k);
    return k + (m + std::hypot(m, n)) / 2.0;
}

namespace {

nlohmann::json matrix_to_json(const Mat& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            rows.push_back({M(i, j).real(), M(i, j).imag()});
    return rows;
}

Mat matrix_from_json(const nlohmann::json& j, int d) {
    if (static_cast<int>(j.size()) != d * d)
        throw std::invalid_argument("FeasiblePoint JSON: entry count mismatch");
    Mat M(d, d);
    for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) {
            const auto& e = j.at(i * d + jj);
            M(i, jj) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return M;
}

}  // namespace

void to_json(nlohmann::json& j, const FeasiblePoint& p) {
    j = nlohmann::json{{"d", p.d}, {"A", matrix_to_json(p.A)}, {"B", matrix_to_json(p.B)}};
}

void from_json(const nlohmann::json& j, FeasiblePoint& p) {
    p.d = j.at("d").get<int>();
    p.A = matrix_from_json(j.at("A"), p.d);
    p.B = matrix_from_json(j.at("B"), p.d);
}

}  // namespace distill
