#pragma once

#include <vector>

#include "nomasim/params.hpp"
#include "nomasim/quadrature.hpp"

namespace nomasim {

// Switches shared by the analytic coverage evaluations.
struct CoverageOptions {
    bool use_inter_bound = false;     // Jensen closed form instead of the exact transform
    bool interference_limited = false;  // force N0 = 0
    QuadratureConfig quad;
};

// One analytic coverage request; evaluate_coverage dispatches on sic_mode.
struct CoverageQuery {
    int rank = 1;
    SicMode sic_mode = SicMode::PerfectSic;
    double sinr_target = 0.0;         // gamma_m (NOMA) or gamma_oma
    double detection_threshold = 1.0; // theta
    const NetworkParams* params = nullptr;
    CoverageOptions options;
};

// Per-rank detection probabilities of the sequential SIC chain.
struct DetectionProfile {
    std::vector<double> p;  // index m-1 = rank m
};

// Rate coverage of the rank-m user under perfect SIC: the r_hat integral of
// noise factor x intra transform x inter transform x rank-m distance density.
double coverage_perfect(int m, double gamma_m, const NetworkParams& params,
                        const CoverageOptions& options = {});

// Interference-limited alpha=4 series form (finite binomial sum of z
// integrals, inter-cluster transform in Jensen form).
double coverage_perfect_series_alpha4(int m, double gamma_m, const NetworkParams& params,
                                      const CoverageOptions& options = {});

// Sequential detection recursion over all 2^{m-1} detection combinations
// (evaluated through its exact product factorization).
DetectionProfile detection_profile_exact(const NetworkParams& params, double theta,
                                         const CoverageOptions& options = {});

// Worst-case detection: product of the perfect-SIC detection probabilities of
// the m-1 closer ranks.
double detection_prob_worst(int m, double theta, const NetworkParams& params,
                            const CoverageOptions& options = {});

// Rate coverage under imperfect SIC, combination weights from the detection
// recursion at threshold theta.
double coverage_imperfect(int m, double gamma_m, double theta, const NetworkParams& params,
                          const CoverageOptions& options = {});

// Same, with externally supplied detection probabilities (test seam and
// building block of the recursion).
double coverage_imperfect_with_profile(int m, double gamma_m, const DetectionProfile& profile,
                                       const NetworkParams& params,
                                       const CoverageOptions& options = {});

// Worst-case rate coverage: detection_prob_worst x coverage_perfect.
double coverage_worst(int m, double gamma_m, double theta, const NetworkParams& params,
                      const CoverageOptions& options = {});

// OMA rate coverage of rank m (integral form; single active interferer per
// cluster, no intra-cluster interference, target 2^{R_th c} - 1).
double coverage_oma(int m, double rate_target, const NetworkParams& params,
                    const CoverageOptions& options = {});

// Closed OMA form via the regularized confluent hypergeometric function;
// valid for the interference-limited Jensen-bound configuration.
double coverage_oma_closed_form(int m, double rate_target, const NetworkParams& params);

// Dispatch on query.sic_mode.
double evaluate_coverage(const CoverageQuery& query);

// Arithmetic mean of the per-rank coverages of the given mode.
double mean_cluster_coverage(SicMode mode, const NetworkParams& params,
                             const CoverageOptions& options = {});

struct RateResult {
    double value = 0.0;   // nats per channel use unless bits was requested
    bool diverged = false;
};

// Average rate of rank m: integral over t of coverage at gamma = e^t - 1,
// truncated where coverage < 1e-6. Diverges (flagged) when nothing bounds the
// SINR. bits=true converts to bits per channel use.
RateResult average_rate(int m, SicMode mode, const NetworkParams& params,
                        const CoverageOptions& options = {}, bool bits = false);

// Exact enumeration cap for the imperfect-SIC combination recursion.
inline constexpr int kCombinationCap = 16;

}  // namespace nomasim
