#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>

#include "distill/matrix.hpp"

namespace distill {

/// A pair (A, B) of traceless d x d matrices with
/// ||A||_F^2 + ||B||_F^2 = 1/d, assembled as X = A (x) I + I (x) B.
struct FeasiblePoint {
    int d = 0;
    Mat A;
    Mat B;

    double norm_sq() const { return A.squaredNorm() + B.squaredNorm(); }
};

// The upper bound (3d-4)/d^2.
double bound(int d);

// Removes the trace of both inputs and rescales so the pair lands on the
// constraint sphere. Throws if both inputs are multiples of the identity.
FeasiblePoint project_to_feasible(const Mat& A0, const Mat& B0);

// d^2 x d^2 Kronecker sum A (x) I + I (x) B.
Mat assemble_X(const FeasiblePoint& p);

// Diagonal pair attaining the bound for d >= 4:
//   A = diag(2(d-1)b, -2b, ..., -2b), B = diag((d-2)b, (d-2)b, -2b, ..., -2b)
// with b = 1/(d sqrt(6d-8)).
FeasiblePoint extremal_point(int d);

enum class ObjectivePath { dense, block_diag_a, eig_both_normal, automatic };

// sigma_1^2(X) + sigma_2^2(X). The automatic path picks the cheapest exact
// route: both A,B normal -> eigenvalue sums; one normal -> per-block SVDs;
// otherwise dense SVD of the assembled matrix. Does not require p to be on
// the constraint sphere, so the unnormalized Corollary form can be checked
// by passing an unprojected pair.
double objective(const FeasiblePoint& p, ObjectivePath path = ObjectivePath::automatic);

enum class Transform { transpose, conjugate, adjoint, swap_factors, phase, local_unitary };

struct TransformArgs {
    double theta = 0.0;        // phase
    std::optional<Mat> U, V;   // local_unitary; must be unitary
};

// Realizes the corresponding X-transform on the pair (A, B). The objective
// is invariant under every transform.
FeasiblePoint apply_transform(const FeasiblePoint& p, Transform which,
                              const TransformArgs& args = {});

struct BlockSpectrum {
    SpectralSummary summary;     // merged block singular values, tagged
    bool top_two_same_block = false;  // Case 1 vs Case 2
};

// Per-block singular values of X = direct-sum of (a_i I + B) for diagonal A.
// Throws if A has off-diagonal entries above 1e-14 in magnitude.
BlockSpectrum block_spectrum(const FeasiblePoint& p);

/// Closed-form data for the two-block objective h(t) = k + (m + n t)/(1 + t^2)
/// with t = tan(theta).
struct BlockClosedForm {
    double a1 = 0, a2 = 0;
    double b11 = 0, b12 = 0, b21 = 0, b22 = 0;
    double theta = 0;

    double k() const;
    double m() const;
    double n() const;
    double t() const { return std::tan(theta); }
};

double h_closed_form(const BlockClosedForm& cf);      // h(t) at t = tan(theta)
double h_at(const BlockClosedForm& cf, double t);     // h at an arbitrary t
double h_sup(const BlockClosedForm& cf);              // sup over t (incl. t -> inf)

// JSON wire format used by the CLI: {"d":d,"A":[[re,im],...],"B":[[re,im],...]}
// with entries in row-major order.
void to_json(nlohmann::json& j, const FeasiblePoint& p);
void from_json(const nlohmann::json& j, FeasiblePoint& p);

}  // namespace distill
