#include "nomasim/coverage.hpp"

#include <cmath>
#include <stdexcept>

#include "nomasim/geometry.hpp"
#include "nomasim/laplace.hpp"
#include "nomasim/special.hpp"

namespace nomasim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_rank(int m, const NetworkParams& params) {
    if (m < 1 || m > params.users_per_cluster)
        throw std::domain_error("coverage: rank outside 1..users_per_cluster");
}

void check_combination_cap(const NetworkParams& params) {
    if (params.users_per_cluster > kCombinationCap)
        throw std::invalid_argument(
            "imperfect-SIC detection recursion supports users_per_cluster <= " +
            std::to_string(kCombinationCap) +
            "; use worst-case mode or the Monte-Carlo engine beyond that");
}

double inter_transform(double s, const NetworkParams& params, const CoverageOptions& options,
                       int interferers_per_cluster = 0) {
    if (options.use_inter_bound)
        return laplace_inter_bound(s, params, interferers_per_cluster);
    return laplace_inter_exact(s, params, options.quad, interferers_per_cluster);
}

double noise_factor(double gamma, double r_alpha, const NetworkParams& params,
                    const CoverageOptions& options) {
    const double n0 = options.interference_limited ? 0.0 : params.noise_power;
    if (n0 == 0.0) return 1.0;
    return std::exp(-gamma * n0 * r_alpha / params.tx_power);
}

// Rank-m OMA SINR coverage at an explicit linear target.
double oma_sinr_coverage(int m, double gamma, const NetworkParams& params,
                         const CoverageOptions& options) {
    check_rank(m, params);
    if (!(gamma > 0.0)) throw std::domain_error("coverage: SINR target must be > 0");
    const double R = params.cluster_radius;
    const double alpha = params.pathloss_exponent;
    const int c = params.users_per_cluster;
    return integrate(
        [&](double r_hat) {
            const double r_alpha = std::pow(r_hat, alpha);
            const double s = gamma * r_alpha / params.tx_power;
            return noise_factor(gamma, r_alpha, params, options) *
                   inter_transform(s, params, options, 1) * pdf_rank_distance(r_hat, m, c, R);
        },
        0.0, R, options.quad);
}

}  // namespace

double coverage_perfect(int m, double gamma_m, const NetworkParams& params,
                        const CoverageOptions& options) {
    check_rank(m, params);
    if (!(gamma_m > 0.0)) throw std::domain_error("coverage: SINR target must be > 0");
    const double R = params.cluster_radius;
    const double alpha = params.pathloss_exponent;
    const int c = params.users_per_cluster;
    return integrate(
        [&](double r_hat) {
            const double r_alpha = std::pow(r_hat, alpha);
            const double s = gamma_m * r_alpha / params.tx_power;
            return noise_factor(gamma_m, r_alpha, params, options) *
                   laplace_intra_perfect(s, m, r_hat, params, options.quad) *
                   inter_transform(s, params, options) * pdf_rank_distance(r_hat, m, c, R);
        },
        0.0, R, options.quad);
}

double coverage_perfect_series_alpha4(int m, double gamma_m, const NetworkParams& params,
                                      const CoverageOptions& options) {
    if (params.pathloss_exponent != 4.0)
        throw std::invalid_argument("coverage_perfect_series_alpha4: requires pathloss_exponent == 4");
    check_rank(m, params);
    if (!(gamma_m > 0.0)) throw std::domain_error("coverage: SINR target must be > 0");
    const int c = params.users_per_cluster;
    const double R = params.cluster_radius;
    const double sqrt_gamma = std::sqrt(gamma_m);
    // acot(x) for x > 0.
    const double acot_sqrt_gamma = std::atan(1.0 / sqrt_gamma);
    const double a = sqrt_gamma * acot_sqrt_gamma - 1.0;  // in (-1, 0)
    const double decay =
        kPi * params.bs_intensity * sqrt_gamma * R * R * c * beta_fn(0.5, 0.5 + c);
    const double inv_beta = 1.0 / beta_fn(m, 1 + c - m);

    double total = 0.0;
    double binom = 1.0;  // C(c-m, i)
    for (int i = 0; i <= c - m; ++i) {
        const double gi = std::pow(a, c - m - i) * binom * inv_beta;
        const double zi = integrate(
            [&](double z) {
                const double w = sqrt_gamma * z;
                const double bracket = w > 0.0 ? 1.0 - w * std::atan(1.0 / w) : 1.0;
                return std::pow(z, c - i - 1) * std::pow(bracket, i) * std::exp(-decay * z);
            },
            0.0, 1.0, options.quad);
        total += gi * zi;
        binom *= static_cast<double>(c - m - i) / (i + 1.0);
    }
    return total;
}

double coverage_imperfect_with_profile(int m, double gamma_m, const DetectionProfile& profile,
                                       const NetworkParams& params,
                                       const CoverageOptions& options) {
    check_rank(m, params);
    check_combination_cap(params);
    if (!(gamma_m > 0.0)) throw std::domain_error("coverage: SINR target must be > 0");
    if (profile.p.size() < static_cast<size_t>(m - 1))
        throw std::invalid_argument("coverage_imperfect_with_profile: profile too short");
    const double R = params.cluster_radius;
    const double alpha = params.pathloss_exponent;
    const int c = params.users_per_cluster;
    // The 2^{m-1} combination sum factorizes exactly: sum_b A(b) L_add(b)
    // = prod_j (p_j + (1-p_j) q_j) with q_j the rank-j inner factor.
    return integrate(
        [&](double r_hat) {
            const double r_alpha = std::pow(r_hat, alpha);
            const double s = gamma_m * r_alpha / params.tx_power;
            double combo = 1.0;
            for (int j = 1; j < m; ++j) {
                const double pj = profile.p[static_cast<size_t>(j - 1)];
                const double qj = laplace_inner_rank_factor(s, j, m, r_hat, params, options.quad);
                combo *= pj + (1.0 - pj) * qj;
            }
            return noise_factor(gamma_m, r_alpha, params, options) *
                   laplace_intra_perfect(s, m, r_hat, params, options.quad) * combo *
                   inter_transform(s, params, options) * pdf_rank_distance(r_hat, m, c, R);
        },
        0.0, R, options.quad);
}

DetectionProfile detection_profile_exact(const NetworkParams& params, double theta,
                                         const CoverageOptions& options) {
    if (!(theta > 0.0)) throw std::domain_error("detection_profile_exact: theta must be > 0");
    check_combination_cap(params);
    DetectionProfile profile;
    profile.p.reserve(static_cast<size_t>(params.users_per_cluster));
    for (int m = 1; m <= params.users_per_cluster; ++m)
        profile.p.push_back(coverage_imperfect_with_profile(m, theta, profile, params, options));
    return profile;
}

double detection_prob_worst(int m, double theta, const NetworkParams& params,
                            const CoverageOptions& options) {
    check_rank(m, params);
    if (!(theta > 0.0)) throw std::domain_error("detection_prob_worst: theta must be > 0");
    double product = 1.0;
    for (int i = 1; i < m; ++i) product *= coverage_perfect(i, theta, params, options);
    return product;
}

double coverage_imperfect(int m, double gamma_m, double theta, const NetworkParams& params,
                          const CoverageOptions& options) {
    const DetectionProfile profile = detection_profile_exact(params, theta, options);
    return coverage_imperfect_with_profile(m, gamma_m, profile, params, options);
}

double coverage_worst(int m, double gamma_m, double theta, const NetworkParams& params,
                      const CoverageOptions& options) {
    return detection_prob_worst(m, theta, params, options) *
           coverage_perfect(m, gamma_m, params, options);
}

double coverage_oma(int m, double rate_target, const NetworkParams& params,
                    const CoverageOptions& options) {
    if (!(rate_target > 0.0)) throw std::domain_error("coverage_oma: rate target must be > 0");
    const double gamma_oma = std::exp2(rate_target * params.users_per_cluster) - 1.0;
    return oma_sinr_coverage(m, gamma_oma, params, options);
}

double coverage_oma_closed_form(int m, double rate_target, const NetworkParams& params) {
    check_rank(m, params);
    if (!(rate_target > 0.0)) throw std::domain_error("coverage_oma: rate target must be > 0");
    const int c = params.users_per_cluster;
    const double alpha = params.pathloss_exponent;
    const double gamma_oma = std::exp2(rate_target * c) - 1.0;
    // Jensen-bound exponent with a single active user per interfering cluster;
    // the transmit power cancels between s and the SINR target.
    const double k = kPi * params.bs_intensity * std::pow(gamma_oma, 2.0 / alpha) *
                     beta_fn(1.0 - 2.0 / alpha, 1.0 + 2.0 / alpha);
    const double x = k * params.cluster_radius * params.cluster_radius;
    return hyp1f1_neg(m, c + 1, x);
}

double evaluate_coverage(const CoverageQuery& query) {
    if (query.params == nullptr) throw std::invalid_argument("evaluate_coverage: params missing");
    const NetworkParams& params = *query.params;
    switch (query.sic_mode) {
        case SicMode::PerfectSic:
            return coverage_perfect(query.rank, query.sinr_target, params, query.options);
        case SicMode::ImperfectSic:
            return coverage_imperfect(query.rank, query.sinr_target, query.detection_threshold,
                                      params, query.options);
        case SicMode::WorstCaseSic:
            return coverage_worst(query.rank, query.sinr_target, query.detection_threshold, params,
                                  query.options);
        case SicMode::Oma:
            return oma_sinr_coverage(query.rank, query.sinr_target, params, query.options);
    }
    throw std::logic_error("evaluate_coverage: unknown mode");
}

double mean_cluster_coverage(SicMode mode, const NetworkParams& params,
                             const CoverageOptions& options) {
    const int c = params.users_per_cluster;
    const double theta = params.detection_threshold;
    double total = 0.0;
    switch (mode) {
        case SicMode::PerfectSic:
            for (int m = 1; m <= c; ++m)
                total += coverage_perfect(m, params.sinr_target_for_rank(m), params, options);
            break;
        case SicMode::ImperfectSic: {
            const DetectionProfile profile = detection_profile_exact(params, theta, options);
            for (int m = 1; m <= c; ++m)
                total += coverage_imperfect_with_profile(m, params.sinr_target_for_rank(m), profile,
                                                         params, options);
            break;
        }
        case SicMode::WorstCaseSic: {
            double worst_chain = 1.0;
            for (int m = 1; m <= c; ++m) {
                total += worst_chain * coverage_perfect(m, params.sinr_target_for_rank(m), params,
                                                        options);
                worst_chain *= coverage_perfect(m, theta, params, options);
            }
            break;
        }
        case SicMode::Oma:
            for (int m = 1; m <= c; ++m)
                total += coverage_oma(m, params.rate_targets.front(), params, options);
            break;
    }
    return total / c;
}

RateResult average_rate(int m, SicMode mode, const NetworkParams& params,
                        const CoverageOptions& options, bool bits) {
    check_rank(m, params);
    constexpr double kCoverageFloor = 1e-6;
    constexpr double kTMax = 40.0;

    DetectionProfile profile;
    if (mode == SicMode::ImperfectSic)
        profile = detection_profile_exact(params, params.detection_threshold, options);
    double worst_scale = 1.0;
    if (mode == SicMode::WorstCaseSic)
        worst_scale = detection_prob_worst(m, params.detection_threshold, params, options);

    auto coverage_at = [&](double t) {
        const double gamma = std::expm1(t);
        if (gamma <= 0.0) return 1.0;
        switch (mode) {
            case SicMode::PerfectSic:
            case SicMode::WorstCaseSic:
                return coverage_perfect(m, gamma, params, options);
            case SicMode::ImperfectSic:
                return coverage_imperfect_with_profile(m, gamma, profile, params, options);
            case SicMode::Oma:
                return oma_sinr_coverage(m, gamma, params, options);
        }
        return 0.0;
    };

    RateResult result;
    double t_hi = 0.5;
    while (coverage_at(t_hi) >= kCoverageFloor) {
        if (t_hi >= kTMax) {
            result.diverged = true;
            break;
        }
        t_hi = std::min(t_hi * 2.0, kTMax);
    }

    QuadratureConfig quad = options.quad;
    quad.abs_tol = std::max(quad.abs_tol, 1e-7);
    quad.rel_tol = std::max(quad.rel_tol, 1e-6);
    double value = integrate(coverage_at, 0.0, t_hi, quad);
    if (mode == SicMode::WorstCaseSic) value *= worst_scale;
    if (mode == SicMode::Oma) value /= params.users_per_cluster;
    result.value = bits ? value / std::log(2.0) : value;
    return result;
}

}  // namespace nomasim
