#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace nomasim {

// SIC regime under which a rank-m user's SINR and rate coverage are evaluated.
enum class SicMode { PerfectSic, ImperfectSic, WorstCaseSic, Oma };

const char* to_string(SicMode mode);

// Scalar model parameters shared by the analytic and Monte-Carlo engines.
// Distances in km, powers in W, intensities in 1/km^2, rates in bps/Hz.
struct NetworkParams {
    double bs_intensity = 0.02;          // cluster centers per km^2
    int users_per_cluster = 8;           // fixed user count per cluster
    double cluster_radius = 0.8;         // km
    double pathloss_exponent = 4.0;      // must exceed 2
    double tx_power = 2.0;               // per-user transmit power, W
    double noise_power = 1e-14;          // W; 0 = interference-limited
    double detection_threshold = 1.0;    // linear SINR threshold for detection
    std::vector<double> rate_targets{3.0};  // per-rank targets; single entry = shared
    double region_side = 10.0;           // simulation window side, km

    // Target rate of the rank-m user (1-based). A single-entry list is shared.
    double rate_target_for_rank(int m) const;

    // Linear SINR target 2^{R_m} - 1 for NOMA rank m.
    double sinr_target_for_rank(int m) const;

    // Linear SINR target 2^{R_th * c} - 1 for the OMA slot of any rank.
    double oma_sinr_target() const;

    // Returns a human-readable message per violated invariant; empty when valid.
    std::vector<std::string> validation_errors() const;

    // Throws std::invalid_argument listing all violations.
    void validate() const;
};

}  // namespace nomasim
