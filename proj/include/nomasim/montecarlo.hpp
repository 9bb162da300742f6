#pragma once

#include <cstdint>
#include <vector>

#include "nomasim/params.hpp"
#include "nomasim/rng.hpp"

namespace nomasim {

// Ranking of the representative cluster's users. ByDistance mirrors the
// analysis; ByReceivedPower ranks the realized powers and quantifies the
// distance-ordering approximation.
enum class RankingRule { ByDistance, ByReceivedPower };

enum class Baseline { Mcp, PppUsers };

// How the representative cluster is chosen. NearestCenter picks the sampled
// BS closest to the window center; PalmCenter pins the representative BS at
// the center with the interfering field an independent full-intensity PPP,
// which is the conditioning the analytic transforms describe.
enum class RepresentativeRule { NearestCenter, PalmCenter };

struct SimOptions {
    int64_t n_trials = 100000;
    uint64_t rng_seed = 1;
    bool wraparound = true;
    RankingRule ranking_rule = RankingRule::ByDistance;
    Baseline baseline = Baseline::Mcp;
    RepresentativeRule representative = RepresentativeRule::NearestCenter;
    bool fixed_cluster_count = false;  // condition on exactly round(lambda L^2) clusters
};

// Outcome of one trial for the representative cluster/cell.
struct TrialResult {
    int ranks = 0;                         // users served by the representative BS
    std::vector<uint8_t> decode_success;   // detection vs theta, per rank
    std::vector<uint8_t> rate_covered;     // vs the rank's SINR target, per rank
    std::vector<double> sinr;              // realized (inf = zero denominator)
    std::vector<double> received_power;    // S_(m), W
    std::vector<double> intra_power;       // residual intra-cluster interference, W
    double inter_power = 0.0;              // W, common to all ranks
};

struct CoverageEstimate {
    double estimate = 0.0;
    double half_width_95 = 0.0;
    int64_t n_trials = 0;
    SicMode mode = SicMode::PerfectSic;
};

struct SimulationSummary {
    SicMode mode = SicMode::PerfectSic;
    int64_t n_trials = 0;
    std::vector<CoverageEstimate> per_rank;            // conditional on the rank existing
    std::vector<int64_t> rank_samples;                 // trials contributing to each rank
    std::vector<CoverageEstimate> detection_per_rank;  // decode_success frequencies
    CoverageEstimate mean_cluster;                     // averaged over realized users
    bool undefined = false;                            // no rank ever realized
};

// One full trial: sample the network, run the mode's decode chain at the
// representative BS, record per-rank outcomes.
TrialResult run_trial(const NetworkParams& params, SicMode mode, const SimOptions& options,
                      Rng& rng);

// Batched independent trials, OpenMP-parallel; estimates are independent of
// the worker count (per-trial seeding, ordered merges).
SimulationSummary estimate_coverage(const NetworkParams& params, SicMode mode,
                                    const SimOptions& options);

// Plain-loop reference implementation; bitwise-identical to the parallel path.
SimulationSummary estimate_coverage_serial(const NetworkParams& params, SicMode mode,
                                           const SimOptions& options);

// Same estimators against the PPP baseline: users an independent PPP of
// intensity c * lambda, nearest-BS association, per-cell evaluation. Cells
// with fewer users than a rank contribute no sample for that rank; the mean
// averages over realized users. user_intensity_override < 0 means c * lambda.
SimulationSummary estimate_ppp_baseline(const NetworkParams& params, SicMode mode,
                                        const SimOptions& options,
                                        double user_intensity_override = -1.0);

enum class LaplaceWhich { IntraPerfect, Inter };

struct LaplaceFunctionalPoint {
    double s = 0.0;
    double estimate = 0.0;
    double half_width_95 = 0.0;
    int64_t n_samples = 0;
};

// Empirical Laplace functional E[exp(-s I)] on a grid of s values. For
// IntraPerfect the expectation conditions on r_(rank) falling in
// [r_bin_lo, r_bin_hi] and n_trials counts cluster draws, accepted or not.
std::vector<LaplaceFunctionalPoint> estimate_laplace_functional(
    const NetworkParams& params, const std::vector<double>& s_grid, LaplaceWhich which,
    const SimOptions& options, int rank = 1, double r_bin_lo = 0.0, double r_bin_hi = 0.0);

}  // namespace nomasim
