#pragma once

#include <cstdint>
#include <string>

#include "distill/matrix.hpp"

namespace distill {

// Swap operator F = sum_ij E_ij (x) E_ji on C^d (x) C^d.
Mat swap_operator(int d);

// Projector onto the maximally entangled state (1/sqrt(d)) sum_i |i,i>.
Mat max_entangled_projector(int d);

// Werner density matrix. The default convention is (I - alpha F)/(d^2 - alpha d),
// which reproduces the separable/NPT thresholds of the distillability
// literature. paper_sign = true selects the raw displayed convention
// (I + alpha F)/(d^2 + alpha d) for comparison.
Mat werner_density(int d, double alpha, bool paper_sign = false);

// Minimum eigenvalue of the partial transpose of the Werner state, from the
// dense eigensolver. Closed form: (1 - alpha d)/(d^2 - alpha d) when
// alpha > 0, else 1/(d^2 - alpha d).
double ppt_min_eig(int d, double alpha);

enum class WernerClass { separable, npt_one_distillable, npt_one_undistillable };

std::string werner_class_name(WernerClass c);

// alpha <= 1/d: separable; alpha > 1/2: NPT one-distillable; otherwise NPT
// one-undistillable.
WernerClass classify(int d, double alpha);

/// Best Schmidt-rank-2 witness value found and its decomposition data.
struct WitnessResult {
    double min_value = 0;  // <psi, rho^Gamma psi> at the argmin
    CVec psi;              // unit vector, Schmidt rank <= 2
    double p1 = 0, p2 = 0; // Schmidt coefficients, p1^2 + p2^2 = 1
    Mat u_pair, v_pair;    // orthonormal local frames of the decomposition
    int restarts_used = 0;
};

// Minimizes <psi, rho^Gamma psi> over Schmidt-rank-2 unit vectors by
// alternating exact eigenvalue steps on the two Schmidt frames, with rank-2
// truncation (reshape + SVD) between steps. Deterministic given seed;
// restarts run concurrently.
WitnessResult witness_min(const Mat& rho, int dim_a, int dim_b, int restarts,
                          std::uint64_t seed, int max_iters = 600);

// Reorders rho (x) rho on (H1 (x) H2)^(x)2 to the bipartition
// (H1 (x) H1):(H2 (x) H2).
Mat tensor_square_regrouped(const Mat& rho, int d);

// Two-copy witness search for the d = 4 Werner state; a negative value
// would contradict two-undistillability.
WitnessResult two_copy_search(double alpha, int restarts, std::uint64_t seed);

}  // namespace distill
