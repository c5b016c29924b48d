// Command-line front end: reproducible sweeps, optimization runs, Werner
// classification, and lemma-oracle batches. Exit codes: 0 success, 2 usage
// error, 3 mathematical-claim violation.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "distill/conjecture.hpp"
#include "distill/optimizer.hpp"
#include "distill/oracles.hpp"
#include "distill/werner.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

json matrix_json(const distill::FeasiblePoint& p) {
    json j;
    distill::to_json(j, p);
    return j;
}

int cmd_sweep(int d, std::int64_t n, std::uint64_t seed, const std::string& out_path) {
    auto records = distill::figure1_sweep(d, n, seed);
    double max_value = 0;
    for (const auto& r : records) max_value = std::max(max_value, r.value);
    double b = distill::bound(d);

    write_file(out_path, distill::sweep_csv(records));
    json sidecar = {{"d", d}, {"n", n}, {"seed", seed}, {"max_value", max_value}, {"bound", b}};
    write_file(out_path + ".json", sidecar.dump(2) + "\n");
    std::cout << sidecar.dump(2) << "\n";

    if (max_value > b) {
        std::cerr << "CONJECTURE VIOLATION: sweep value " << max_value << " exceeds bound " << b
                  << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_optimize(int d, const std::string& family, int restarts, std::uint64_t seed,
                 int max_iters) {
    distill::OptimizerConfig cfg;
    cfg.family = {distill::family_from_name(family), d, seed};
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    distill::OptimizationReport rep = distill::maximize(cfg);

    json trace = json::array();
    for (const auto& t : rep.trace)
        trace.push_back({{"start_index", t.start_index},
                         {"final_value", t.final_value},
                         {"iterations", t.iterations}});
    json out = {{"d", d},
                {"family", family},
                {"restarts", restarts},
                {"seed", seed},
                {"max_iters", max_iters},
                {"best_value", rep.best_value},
                {"kkt_residual", rep.kkt_residual},
                {"bound", distill::bound(d)},
                {"best_point", matrix_json(rep.best_point)},
                {"trace", trace}};
    std::cout << out.dump(2) << "\n";

    bool normal_family = cfg.family.tag == distill::Family::normal_a ||
                         cfg.family.tag == distill::Family::normal_both;
    if (normal_family && rep.best_value > distill::bound(d) + 1e-9) {
        std::cerr << "BOUND VIOLATION in a normal family: " << rep.best_value << " > "
                  << distill::bound(d) << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_extremal(int d) {
    distill::FeasiblePoint p = distill::extremal_point(d);
    double obj = distill::objective(p);
    double gap = std::abs(obj - distill::bound(d));
    json out = {{"d", d},
                {"objective", obj},
                {"bound", distill::bound(d)},
                {"abs_gap", gap},
                {"point", matrix_json(p)}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_werner(int d, double alpha, int restarts, std::uint64_t seed, bool paper_sign) {
    distill::Mat rho = distill::werner_density(d, alpha, paper_sign);
    distill::WitnessResult wr = distill::witness_min(rho, d, d, restarts, seed);
    json out = {{"d", d},
                {"alpha", alpha},
                {"convention", paper_sign ? "paper_displayed" : "proposition_consistent"},
                {"min_value", wr.min_value},
                {"restarts", restarts},
                {"seed", seed},
                {"ppt_min_eig", distill::ppt_min_eig(d, alpha)},
                {"classification", distill::werner_class_name(distill::classify(d, alpha))}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_two_copy(double alpha, int restarts, std::uint64_t seed, const std::string& out_path) {
    distill::WitnessResult wr = distill::two_copy_search(alpha, restarts, seed);
    json out = {{"d", 4},
                {"alpha", alpha},
                {"restarts", restarts},
                {"seed", seed},
                {"min_value", wr.min_value}};
    std::cout << out.dump(2) << "\n";
    if (wr.min_value < -1e-7) {
        // A genuine negative value would witness two-copy distillability.
        json counterexample = out;
        json psi = json::array();
        for (Eigen::Index i = 0; i < wr.psi.size(); ++i)
            psi.push_back({wr.psi(i).real(), wr.psi(i).imag()});
        counterexample["psi"] = psi;
        std::string path = out_path.empty() ? "two_copy_counterexample.json" : out_path;
        write_file(path, counterexample.dump(2) + "\n");
        std::cerr << "TWO-COPY WITNESS FOUND: value " << wr.min_value << ", state written to "
                  << path << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_oracle(const std::string& lemma, std::int64_t n, std::uint64_t seed) {
    std::int64_t pass = 0;
    if (lemma == "a1") {
        for (std::int64_t i = 0; i < n; ++i) {
            auto rng = distill::make_stream(seed, static_cast<std::uint64_t>(i));
            std::normal_distribution<double> g(0.0, 1.0);
            std::uniform_int_distribution<int> dim(1, 8);
            int N = dim(rng);
            Eigen::VectorXd a(N), b(N), x(N);
            for (int j = 0; j < N; ++j) {
                a(j) = g(rng);
                b(j) = 0.05 + std::abs(g(rng));
                x(j) = g(rng);
            }
            if (x.squaredNorm() == 0) x(0) = 1.0;
            if (distill::rayleigh_bound_check(a, b, x).holds) ++pass;
        }
    } else if (lemma == "dichotomy") {
        for (std::int64_t i = 0; i < n; ++i) {
            auto rng = distill::make_stream(seed, static_cast<std::uint64_t>(i));
            std::uniform_int_distribution<int> nd(1, 5), md(1, 3), cd(0, 2);
            auto inst = distill::random_quadratic_instance(nd(rng), md(rng), cd(rng), seed,
                                                           static_cast<std::uint64_t>(i));
            if (distill::dichotomy_check(inst) != distill::DichotomyVerdict::violated) ++pass;
        }
    } else if (lemma == "equal_y") {
        for (std::int64_t i = 0; i < n; ++i) {
            auto rng = distill::make_stream(seed, static_cast<std::uint64_t>(i));
            std::uniform_int_distribution<int> nd(2, 5), md(1, 4), cd(0, 1);
            auto inst = distill::random_equal_y_instance(nd(rng), md(rng), cd(rng), seed,
                                                         static_cast<std::uint64_t>(i));
            if (distill::equal_y_check(inst)) ++pass;
        }
    } else {
        std::cerr << "unknown lemma: " << lemma << " (expected a1, dichotomy, equal_y)\n";
        return kExitUsage;
    }
    std::cout << pass << "/" << n << " pass\n";
    return pass == n ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker-sum singular-value bound and Werner distillability toolkit"};
    app.require_subcommand(1);

    int d = 4;
    std::int64_t n = 10000;
    std::uint64_t seed = 0;
    std::string out_path = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "mixed-family objective sweep, CSV + JSON sidecar");
    sweep->add_option("--d", d, "local dimension")->check(CLI::Range(2, 64));
    sweep->add_option("--n", n, "number of samples")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "RNG seed");
    sweep->add_option("--out", out_path, "CSV output path");

    int od = 4, restarts = 32, max_iters = 400;
    std::uint64_t oseed = 0;
    std::string family = "normal_a";
    auto* opt = app.add_subcommand("optimize", "projected gradient ascent with restarts");
    opt->add_option("--d", od, "local dimension")->check(CLI::Range(2, 64));
    opt->add_option("--family", family, "general|normal_a|normal_both|b_in_P|theorem2_forms");
    opt->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
    opt->add_option("--seed", oseed, "RNG seed");
    opt->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);

    int ed = 4;
    auto* ext = app.add_subcommand("extremal", "bound-attaining diagonal pair");
    ext->add_option("--d", ed, "local dimension")->check(CLI::Range(4, 64));

    int wd = 4, wrestarts = 32;
    double alpha = 0.5;
    std::uint64_t wseed = 0;
    bool paper_sign = false;
    auto* wern = app.add_subcommand("werner", "Werner-state classification and witness search");
    wern->add_option("--d", wd, "local dimension")->check(CLI::Range(2, 16));
    wern->add_option("--alpha", alpha, "Werner parameter")->check(CLI::Range(-1.0, 1.0));
    wern->add_option("--restarts", wrestarts)->check(CLI::PositiveNumber);
    wern->add_option("--seed", wseed, "RNG seed");
    wern->add_flag("--paper-sign", paper_sign, "use the raw displayed sign convention");

    double talpha = 0.5;
    int trestarts = 64;
    std::uint64_t tseed = 0;
    std::string tout;
    auto* two = app.add_subcommand("two-copy", "two-copy witness search at d = 4");
    two->add_option("--alpha", talpha)->check(CLI::Range(0.25, 0.5));
    two->add_option("--restarts", trestarts)->check(CLI::PositiveNumber);
    two->add_option("--seed", tseed, "RNG seed");
    two->add_option("--out", tout, "counterexample output path (on violation)");

    std::string lemma = "a1";
    std::int64_t on = 1000;
    std::uint64_t orseed = 0;
    auto* orc = app.add_subcommand("oracle", "randomized lemma checks");
    orc->add_option("--lemma", lemma, "a1|dichotomy|equal_y");
    orc->add_option("--n", on)->check(CLI::PositiveNumber);
    orc->add_option("--seed", orseed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(d, n, seed, out_path);
        if (opt->parsed()) return cmd_optimize(od, family, restarts, oseed, max_iters);
        if (ext->parsed()) return cmd_extremal(ed);
        if (wern->parsed()) return cmd_werner(wd, alpha, wrestarts, wseed, paper_sign);
        if (two->parsed()) return cmd_two_copy(talpha, trestarts, tseed, tout);
        if (orc->parsed()) return cmd_oracle(lemma, on, orseed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
