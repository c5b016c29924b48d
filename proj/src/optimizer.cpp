#include "distill/optimizer.hpp"

#include <Eigen/QR>
#include <cmath>

#include "distill/parallel.hpp"

namespace distill {

namespace {

// Unprojected Euclidean gradient of sigma_1^2 + sigma_2^2 w.r.t. (A, B):
// G_X = 2 (s1 u1 v1^H + s2 u2 v2^H), partial-traced onto the two factors.
struct EuclideanGrad {
    Mat GA, GB;
    double gap = 0;  // sigma_2 - sigma_3
};

EuclideanGrad euclidean_gradient(const FeasiblePoint& p) {
    Mat X = assemble_X(p);
    SpectralSummary s = singular_values(X, 3);
    Mat GX = 2.0 * (s.values(0) * s.left_pair.col(0) * s.right_pair.col(0).adjoint() +
                    s.values(1) * s.left_pair.col(1) * s.right_pair.col(1).adjoint());
    EuclideanGrad g;
    g.GA = partial_trace_second(GX, p.d, p.d);
    g.GB = partial_trace_first(GX, p.d, p.d);
    g.gap = s.values(1) - s.values(2);
    return g;
}

}  // namespace

GradientResult gradient(const FeasiblePoint& p, double smoothing_eps) {
    EuclideanGrad eg = euclidean_gradient(p);
    GradientResult out;
    out.gap = eg.gap;
    if (eg.gap <= smoothing_eps) {
        out.degenerate = true;
        return out;
    }
    Mat I = Mat::Identity(p.d, p.d);
    out.GA = eg.GA - (eg.GA.trace() / double(p.d)) * I;
    out.GB = eg.GB - (eg.GB.trace() / double(p.d)) * I;
    // Remove the radial component along (A, B).
    double radial = (out.GA.cwiseProduct(p.A.conjugate()).sum() +
                     out.GB.cwiseProduct(p.B.conjugate()).sum())
                        .real();
    double r2 = p.norm_sq();
    out.GA -= (radial / r2) * p.A;
    out.GB -= (radial / r2) * p.B;
    out.norm = std::sqrt(out.GA.squaredNorm() + out.GB.squaredNorm());
    return out;
}

namespace {

struct RestartResult {
    FeasiblePoint point;
    double value = 0;
    int iterations = 0;
};

RestartResult run_restart(const OptimizerConfig& cfg, std::uint64_t index) {
    FeasiblePoint p = sample(cfg.family, index);
    auto perturb_rng = make_stream(cfg.family.rng_seed ^ 0x5eedfeedULL, index);
    double f = objective(p);
    double step = cfg.step_init;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        GradientResult g = gradient(p, cfg.smoothing_eps);
        int attempts = 0;
        while (g.degenerate && attempts++ < 8) {
            // Exact top-two/three tie: break it with a tiny perturbation.
            Mat dA = 1e-10 * random_complex(p.d, p.d, perturb_rng);
            Mat dB = 1e-10 * random_complex(p.d, p.d, perturb_rng);
            p = project_to_feasible(p.A + dA, p.B + dB);
            f = objective(p);
            g = gradient(p, cfg.smoothing_eps);
        }
        if (g.degenerate || g.norm < cfg.grad_tol) break;
        double s = step;
        bool moved = false;
        while (s > 1e-15) {
            FeasiblePoint cand = project_to_feasible(p.A + s * g.GA, p.B + s * g.GB);
            double fc = objective(cand);
            if (fc >= f + 1e-4 * s * g.norm * g.norm) {
                p = cand;
                f = fc;
                step = std::min(2.0 * s, 10.0 * cfg.step_init);
                moved = true;
                break;
            }
            s *= cfg.step_shrink;
        }
        if (!moved) break;
    }
    return {p, f, it};
}

}  // namespace

OptimizationReport maximize(const OptimizerConfig& config) {
    std::vector<RestartResult> results(config.restarts);
    parallel_for(
        config.restarts,
        [&](std::int64_t i) { results[i] = run_restart(config, static_cast<std::uint64_t>(i)); },
        config.serial);
    OptimizationReport report;
    report.trace.reserve(results.size());
    int best = 0;
    for (int i = 0; i < static_cast<int>(results.size()); ++i) {
        report.trace.push_back({static_cast<std::uint64_t>(i), results[i].value,
                                results[i].iterations});
        if (results[i].value > results[best].value) best = i;
    }
    report.best_point = results[best].point;
    report.best_value = results[best].value;
    report.kkt_residual = kkt_residual(report.best_point);
    return report;
}

double kkt_residual(const FeasiblePoint& p) {
    const int d = p.d;
    const int n = 4 * d * d;  // Re A, Im A, Re B, Im B
    auto pack = [&](const Mat& MA, const Mat& MB) {
        Eigen::VectorXd v(n);
        int k = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(k++) = MA(i, j).real();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(k++) = MA(i, j).imag();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(k++) = MB(i, j).real();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(k++) = MB(i, j).imag();
        return v;
    };
    EuclideanGrad eg = euclidean_gradient(p);
    Eigen::VectorXd g = pack(eg.GA, eg.GB);
    Eigen::VectorXd x = pack(p.A, p.B);

    // Columns: gradients of Re tr A, Im tr A, Re tr B, Im tr B, and the
    // quadratic constraint (2 W x with W = I).
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, 5);
    for (int i = 0; i < d; ++i) {
        C(i * d + i, 0) = 1.0;
        C(d * d + i * d + i, 1) = 1.0;
        C(2 * d * d + i * d + i, 2) = 1.0;
        C(3 * d * d + i * d + i, 3) = 1.0;
    }
    C.col(4) = 2.0 * x;
    Eigen::VectorXd theta = C.colPivHouseholderQr().solve(g);
    return (g - C * theta).norm();
}

std::vector<SweepRecord> figure1_sweep(int d, std::int64_t n, std::uint64_t seed, bool serial) {
    std::vector<Family> fams = {Family::general, Family::normal_a, Family::normal_both,
                                Family::b_in_P};
    if (d == 4) fams.push_back(Family::theorem2_forms);
    std::vector<SweepRecord> records(static_cast<size_t>(n));
    parallel_for(
        n,
        [&](std::int64_t i) {
            Family f = fams[static_cast<size_t>(i) % fams.size()];
            FeasiblePoint p = sample({f, d, seed}, static_cast<std::uint64_t>(i));
            records[static_cast<size_t>(i)] = {static_cast<std::uint64_t>(i), f, objective(p)};
        },
        serial);
    return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = "index,family,value\n";
    char buf[64];
    for (const SweepRecord& rec : records) {
        std::snprintf(buf, sizeof(buf), "%.17g", rec.value);
        out += std::to_string(rec.index);
        out += ',';
        out += family_name(rec.family);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

// --- Reduced two-block problem -------------------------------------------

namespace {

// Ellipsoid weights for the reduced coordinates.
inline std::array<double, 6> reduced_weights(int d) {
    double c = double(d) / (d - 2.0);
    return {c, 1.0, 1.0, c, 1.0, 1.0};
}

}  // namespace

double reduced_h(const ReducedPoint& rp) {
    auto [x, y, z, w, p, q] = rp.v;
    double s1 = p * p + z * z;
    double s2 = q * q + (w + x - y) * (w + x - y);
    return 2.0 * std::sqrt(s1 * s2) +
           2.0 * (p * p + p * q + q * q + z * (w + x + y) + (w + x) * (w + x) + y * y + z * z);
}

std::array<double, 6> reduced_grad(const ReducedPoint& rp) {
    auto [x, y, z, w, p, q] = rp.v;
    double root1 = std::hypot(p, z);
    double root2 = std::hypot(q, w + x - y);
    // Ratios s1/sqrt(s1 s2) and s2/sqrt(s1 s2); the zero guard picks the
    // zero subgradient on the kink.
    double r12 = (root2 > 0.0) ? root1 / root2 : 0.0;
    double r21 = (root1 > 0.0) ? root2 / root1 : 0.0;
    double u = w + x - y;
    double gx = 2.0 * (u * r12 + 2.0 * x + z + 2.0 * w);
    double gy = 2.0 * (-u * r12 + 2.0 * y + z);
    double gz = 2.0 * (z * r21 + x + y + 2.0 * z + w);
    double gp = 2.0 * (p * r21 + 2.0 * p + q);
    double gq = 2.0 * (q * r12 + p + 2.0 * q);
    return {gx, gy, gz, gx, gp, gq};
}

ReducedOptimum maximize_reduced(int d, std::uint64_t seed, int max_iters, double grad_tol) {
    if (d < 4) throw std::invalid_argument("maximize_reduced: requires d >= 4");
    auto wts = reduced_weights(d);
    const double r = 1.0 / (2.0 * d);
    auto retract = [&](ReducedPoint v) {
        double q = 0;
        for (int i = 0; i < 6; ++i) q += wts[i] * v.v[i] * v.v[i];
        double s = std::sqrt(r / q);
        for (double& c : v.v) c *= s;
        return v;
    };
    auto tangent = [&](const ReducedPoint& v, const std::array<double, 6>& g) {
        std::array<double, 6> wv;
        double gw = 0, ww = 0;
        for (int i = 0; i < 6; ++i) {
            wv[i] = wts[i] * v.v[i];
            gw += g[i] * wv[i];
            ww += wv[i] * wv[i];
        }
        std::array<double, 6> t;
        for (int i = 0; i < 6; ++i) t[i] = g[i] - (gw / ww) * wv[i];
        return t;
    };

    auto rng = make_stream(seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ReducedPoint v;
    for (double& c : v.v) c = gauss(rng);
    v = retract(v);

    double f = reduced_h(v);
    double step = 0.1;
    int it = 0;
    double tnorm = 0;
    for (; it < max_iters; ++it) {
        auto g = reduced_grad(v);
        auto t = tangent(v, g);
        tnorm = 0;
        for (double c : t) tnorm += c * c;
        tnorm = std::sqrt(tnorm);
        if (tnorm < grad_tol) break;
        double s = step;
        bool moved = false;
        while (s > 1e-18) {
            ReducedPoint cand = v;
            for (int i = 0; i < 6; ++i) cand.v[i] += s * t[i];
            cand = retract(cand);
            double fc = reduced_h(cand);
            if (fc >= f + 1e-4 * s * tnorm * tnorm) {
                v = cand;
                f = fc;
                step = std::min(2.0 * s, 1.0);
                moved = true;
                break;
            }
            s *= 0.5;
        }
        if (!moved) break;
    }

    ReducedOptimum out;
    out.point = v;
    out.h = f;
    out.iterations = it;
    auto g = reduced_grad(v);
    double gw = 0, ww = 0;
    for (int i = 0; i < 6; ++i) {
        double wv = wts[i] * v.v[i];
        gw += g[i] * wv;
        ww += wv * wv;
    }
    out.mu_fit = gw / (2.0 * ww);
    double res2 = 0;
    for (int i = 0; i < 6; ++i) {
        double ri = g[i] - 2.0 * out.mu_fit * wts[i] * v.v[i];
        res2 += ri * ri;
    }
    out.grad_residual = std::sqrt(res2);
    // Armijo stalls near sqrt(machine-eps) * |h|; accept that as stationary.
    out.converged = out.grad_residual < 1e-6 * std::max(1.0, std::abs(f));
    out.mu_rel_err = std::abs(out.mu_fit - 2.0 * d * out.h) / std::abs(out.mu_fit);
    return out;
}

}  // namespace distill
