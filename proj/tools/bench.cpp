// Compares the serial reference path against the OpenMP path on the two hot
// loops (objective sweep, optimizer restarts) and checks they agree exactly.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "distill/optimizer.hpp"
#include "distill/parallel.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main(int argc, char** argv) {
    int d = 4;
    std::int64_t n = 2000;
    int restarts = 24;
    if (argc > 1) d = std::atoi(argv[1]);
    if (argc > 2) n = std::atoll(argv[2]);
    if (argc > 3) restarts = std::atoi(argv[3]);

    std::printf("threads available: %d\n", distill::thread_budget());

    double t0 = now_seconds();
    auto serial_records = distill::figure1_sweep(d, n, 7, /*serial=*/true);
    double t1 = now_seconds();
    auto parallel_records = distill::figure1_sweep(d, n, 7, /*serial=*/false);
    double t2 = now_seconds();

    bool same = serial_records.size() == parallel_records.size();
    for (std::size_t i = 0; same && i < serial_records.size(); ++i)
        same = serial_records[i].value == parallel_records[i].value &&
               serial_records[i].family == parallel_records[i].family;
    std::printf("sweep d=%d n=%lld: serial %.3fs, parallel %.3fs, speedup %.2fx, identical=%s\n",
                d, static_cast<long long>(n), t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
                same ? "yes" : "NO");

    distill::OptimizerConfig cfg;
    cfg.family = {distill::Family::general, d, 7};
    cfg.restarts = restarts;
    cfg.serial = true;
    t0 = now_seconds();
    auto rep_s = distill::maximize(cfg);
    t1 = now_seconds();
    cfg.serial = false;
    auto rep_p = distill::maximize(cfg);
    t2 = now_seconds();
    std::printf(
        "optimize d=%d restarts=%d: serial %.3fs, parallel %.3fs, speedup %.2fx, identical=%s\n",
        d, restarts, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
        rep_s.best_value == rep_p.best_value ? "yes" : "NO");

    if (!same || rep_s.best_value != rep_p.best_value) return 1;
    return 0;
}
