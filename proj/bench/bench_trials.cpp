// Throughput comparison of the serial reference and the OpenMP trial loop,
// plus a check that both produce identical estimates.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "nomasim/montecarlo.hpp"

using namespace nomasim;

namespace {

double seconds_for(const NetworkParams& params, SicMode mode, const SimOptions& options,
                   bool parallel, SimulationSummary& out) {
    const auto start = std::chrono::steady_clock::now();
    out = parallel ? estimate_coverage(params, mode, options)
                   : estimate_coverage_serial(params, mode, options);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    NetworkParams params;
    params.bs_intensity = 0.08;
    params.rate_targets = {1.5};
    SimOptions options;
    options.n_trials = argc > 1 ? std::atoll(argv[1]) : 200000;
    options.rng_seed = 42;

    std::printf("trials=%lld threads=%d\n", static_cast<long long>(options.n_trials),
                omp_get_max_threads());
    std::printf("%-10s %-12s %-12s %-9s %s\n", "mode", "serial s", "parallel s", "speedup",
                "match");
    for (SicMode mode : {SicMode::PerfectSic, SicMode::ImperfectSic, SicMode::Oma}) {
        SimulationSummary serial, parallel;
        const double ts = seconds_for(params, mode, options, false, serial);
        const double tp = seconds_for(params, mode, options, true, parallel);
        bool match = serial.mean_cluster.estimate == parallel.mean_cluster.estimate;
        for (size_t m = 0; m < serial.per_rank.size(); ++m)
            match = match && serial.per_rank[m].estimate == parallel.per_rank[m].estimate;
        std::printf("%-10s %-12.3f %-12.3f %-9.2f %s\n", to_string(mode), ts, tp, ts / tp,
                    match ? "yes" : "NO");
        if (!match) return 1;
    }
    return 0;
}
