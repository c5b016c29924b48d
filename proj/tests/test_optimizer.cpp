#include <doctest.h>

#include <sstream>

#include "distill/optimizer.hpp"

using namespace distill;

namespace {

// Finite-difference directional derivative of the objective along a tangent
// direction, with re-projection onto the sphere (the projection's
// first-order effect vanishes for tangent directions).
double fd_directional(const FeasiblePoint& p, const Mat& TA, const Mat& TB, double eps) {
    auto eval = [&](double s) {
        FeasiblePoint q = project_to_feasible(p.A + s * TA, p.B + s * TB);
        return objective(q);
    };
    return (eval(eps) - eval(-eps)) / (2.0 * eps);
}

Mat traceless_random(int d, std::mt19937_64& rng) {
    Mat M = random_complex(d, d, rng);
    return M - (M.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
}

}  // namespace

TEST_CASE("projected gradient matches finite differences") {
    auto rng = make_stream(50, 0);
    int checked = 0;
    for (std::uint64_t i = 0; checked < 12 && i < 40; ++i) {
        FeasiblePoint p = sample({Family::general, 4, 50}, i);
        GradientResult g = gradient(p);
        if (g.degenerate) continue;
        if (g.gap < 1e-3) continue;  // FD needs a smooth neighborhood
        ++checked;
        // tangent component of the gradient has no radial part
        double radial = (g.GA.cwiseProduct(p.A.conjugate()).sum() +
                         g.GB.cwiseProduct(p.B.conjugate()).sum()).real();
        CHECK(std::abs(radial) < 1e-10);
        CHECK(std::abs(g.GA.trace()) < 1e-12);
        CHECK(std::abs(g.GB.trace()) < 1e-12);

        for (int rep = 0; rep < 3; ++rep) {
            Mat TA = traceless_random(4, rng), TB = traceless_random(4, rng);
            // remove the radial component so the direction is tangent
            Complex rad = (TA.cwiseProduct(p.A.conjugate()).sum() +
                           TB.cwiseProduct(p.B.conjugate()).sum());
            double nsq = p.norm_sq();
            TA -= (rad.real() / nsq) * p.A;
            TB -= (rad.real() / nsq) * p.B;
            double fd = fd_directional(p, TA, TB, 1e-6);
            double an = (g.GA.cwiseProduct(TA.conjugate()).sum() +
                         g.GB.cwiseProduct(TB.conjugate()).sum()).real();
            CHECK(an == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
        }
    }
    CHECK(checked == 12);
}

TEST_CASE("gradient flags a degenerate top-two cluster") {
    FeasiblePoint p;
    p.d = 4;
    p.A = Mat::Zero(4, 4);
    p.B = Mat::Zero(4, 4);
    p.B(0, 0) = 1.0 / std::sqrt(8.0);
    p.B(1, 1) = -1.0 / std::sqrt(8.0);
    // sigma = |b_j| with multiplicity 4, so sigma_2 = sigma_3
    GradientResult g = gradient(p);
    CHECK(g.degenerate);
    CHECK(g.gap <= 1e-9);
    // the extremal point is smooth: gap = 1/4
    GradientResult ge = gradient(extremal_point(4));
    CHECK(!ge.degenerate);
    CHECK(ge.gap == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("maximize improves on raw samples and reports a small KKT residual") {
    OptimizerConfig cfg;
    cfg.family = {Family::normal_a, 4, 51};
    cfg.restarts = 8;
    OptimizationReport rep = maximize(cfg);
    CHECK(rep.best_value > 0.49);
    CHECK(rep.best_value <= bound(4) + 1e-9);
    CHECK(rep.kkt_residual < 1e-4);
    CHECK(rep.trace.size() == 8);
    for (const auto& t : rep.trace) CHECK(rep.best_value >= t.final_value - 1e-12);
    CHECK(rep.best_point.norm_sq() == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("serial and parallel optimizer paths are bitwise identical") {
    OptimizerConfig cfg;
    cfg.family = {Family::general, 4, 52};
    cfg.restarts = 6;
    cfg.max_iters = 80;
    cfg.serial = true;
    OptimizationReport a = maximize(cfg);
    cfg.serial = false;
    OptimizationReport b = maximize(cfg);
    CHECK(a.best_value == b.best_value);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i)
        CHECK(a.trace[i].final_value == b.trace[i].final_value);
}

TEST_CASE("kkt_residual is large away from optima and small at the extremal point") {
    CHECK(kkt_residual(extremal_point(4)) < 1e-10);
    FeasiblePoint p = sample({Family::general, 4, 53}, 0);
    CHECK(kkt_residual(p) > 1e-3);
}

TEST_CASE("figure1_sweep is deterministic and CSV round-trips") {
    auto r1 = figure1_sweep(4, 64, 54, true);
    auto r2 = figure1_sweep(4, 64, 54, false);
    REQUIRE(r1.size() == 64);
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].value == r2[i].value);
        CHECK(r1[i].family == r2[i].family);
        CHECK(r1[i].value <= bound(4) + 1e-9);
        CHECK(r1[i].value > 0.0);
    }
    std::string csv = sweep_csv(r1);
    CHECK(csv.rfind("index,family,value\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    // float round-trip through the 17-digit format
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    auto comma = line.rfind(',');
    CHECK(std::stod(line.substr(comma + 1)) == r1[0].value);
}

TEST_CASE("reduced objective: homogeneity, gradient, and KKT multiplier") {
    auto rng = make_stream(55, 0);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        ReducedPoint v;
        for (double& c : v.v) c = g(rng);
        // h is homogeneous of degree 2
        ReducedPoint w = v;
        for (double& c : w.v) c *= 1.7;
        CHECK(reduced_h(w) == doctest::Approx(1.7 * 1.7 * reduced_h(v)).epsilon(1e-12));
        // gradient vs central differences (away from the sqrt kink)
        auto gr = reduced_grad(v);
        for (int i = 0; i < 6; ++i) {
            ReducedPoint vp = v, vm = v;
            vp.v[i] += 1e-6;
            vm.v[i] -= 1e-6;
            double fd = (reduced_h(vp) - reduced_h(vm)) / 2e-6;
            CHECK(gr[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
        }
    }
    for (std::uint64_t s = 0; s < 10; ++s) {
        ReducedOptimum opt = maximize_reduced(4, s);
        CHECK(opt.converged);
        CHECK(opt.h <= bound(4) + 1e-9);
        CHECK(opt.mu_rel_err < 1e-6);
        CHECK(opt.mu_fit == doctest::Approx(2.0 * 4 * opt.h).epsilon(1e-6));
    }
}
