#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "distill/sampler.hpp"

namespace distill {

struct OptimizerConfig {
    SamplerFamily family;
    int restarts = 32;
    int max_iters = 400;
    double step_init = 0.1;
    double step_shrink = 0.5;
    double grad_tol = 1e-9;
    double smoothing_eps = 1e-9;
    bool serial = false;  // force the serial reference path
};

struct GradientResult {
    Mat GA, GB;      // Euclidean gradient projected onto the constraint tangent
    double norm = 0;
    double gap = 0;  // sigma_2 - sigma_3, smoothness margin
    bool degenerate = false;
};

// Gradient of sigma_1^2 + sigma_2^2 with respect to (A, B), projected onto
// the tangent space of the trace and norm constraints. Flags a degenerate
// top-two cluster (gap <= smoothing_eps) instead of returning garbage.
GradientResult gradient(const FeasiblePoint& p, double smoothing_eps = 1e-9);

struct RestartTrace {
    std::uint64_t start_index = 0;
    double final_value = 0;
    int iterations = 0;
};

struct OptimizationReport {
    FeasiblePoint best_point;
    double best_value = 0;
    double kkt_residual = 0;
    std::vector<RestartTrace> trace;
};

// Projected gradient ascent with Armijo backtracking; restarts drawn from
// config.family and run concurrently, merged deterministically.
OptimizationReport maximize(const OptimizerConfig& config);

// Norm of grad f - sum mu_i c_i - 2 nu x at p, with multipliers fitted by
// least squares over the trace and norm constraints (real coordinates).
double kkt_residual(const FeasiblePoint& p);

struct SweepRecord {
    std::uint64_t index = 0;
    Family family = Family::general;
    double value = 0;
};

// Mixed-family objective sweep; deterministic given seed, identical between
// the serial and parallel paths.
std::vector<SweepRecord> figure1_sweep(int d, std::int64_t n, std::uint64_t seed,
                                       bool serial = false);

// CSV emission: header "index,family,value", LF line endings, floats with
// 17 significant digits.
std::string sweep_csv(const std::vector<SweepRecord>& records);

// --- Reduced two-block problem -------------------------------------------
// Six real coordinates v = (x, y, z, w, p, q) on the ellipsoid
//   d/(d-2) (x^2 + w^2) + y^2 + z^2 + p^2 + q^2 = 1/(2d),
// with objective
//   h = 2 sqrt((p^2+z^2)(q^2+(w+x-y)^2))
//       + 2 (p^2 + pq + q^2 + z(w+x+y) + (w+x)^2 + y^2 + z^2).
// At a constrained stationary point the multiplier satisfies mu = 2 d h.

struct ReducedPoint {
    std::array<double, 6> v{};  // x, y, z, w, p, q
};

double reduced_h(const ReducedPoint& rp);
std::array<double, 6> reduced_grad(const ReducedPoint& rp);

struct ReducedOptimum {
    ReducedPoint point;
    double h = 0;
    double mu_fit = 0;       // least-squares multiplier from the KKT system
    double mu_rel_err = 0;   // |mu_fit - 2 d h| / mu_fit
    double grad_residual = 0;
    int iterations = 0;
    bool converged = false;
};

ReducedOptimum maximize_reduced(int d, std::uint64_t seed, int max_iters = 20000,
                                double grad_tol = 1e-10);

}  // namespace distill
