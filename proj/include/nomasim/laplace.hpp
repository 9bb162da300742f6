#pragma once

#include <cstdint>
#include <vector>

#include "nomasim/params.hpp"
#include "nomasim/quadrature.hpp"

namespace nomasim {

// Arguments of an intra-cluster Laplace-transform evaluation. In coverage use
// the Laplace argument is s = gamma * r_hat^alpha / P_u.
struct LaplaceQuery {
    double s = 0.0;
    int rank = 1;
    double conditioning_distance = 0.0;
    std::vector<uint8_t> detected;  // length rank-1; 1 = signal detected
};

// Laplace transform of the intra-cluster interference seen by the rank-m user
// under perfect SIC, conditioned on its distance r_hat. Closed form when
// alpha == 4, adaptive quadrature otherwise. Value in (0, 1].
double laplace_intra_perfect(double s, int m, double r_hat, const NetworkParams& params,
                             const QuadratureConfig& quad = {});

// Same transform by adaptive quadrature of the conditional-outer integrand for
// any alpha (also the oracle the alpha=4 closed form is checked against).
double laplace_intra_perfect_numeric(double s, int m, double r_hat, const NetworkParams& params,
                                     const QuadratureConfig& quad = {});

// Closed arctan form, valid only for alpha == 4.
double laplace_intra_perfect_alpha4(double s, int m, double r_hat, const NetworkParams& params);

// Laplace transform of the additional interference from inner users whose
// signals went undetected (detected[j-1] == 0 contributes rank j).
double laplace_intra_additional(double s, int m, double r_hat,
                                const std::vector<uint8_t>& detected,
                                const NetworkParams& params, const QuadratureConfig& quad = {});

// Product of the perfect-SIC transform and the undetected-inner factor.
double laplace_intra_imperfect(double s, int m, double r_hat,
                               const std::vector<uint8_t>& detected,
                               const NetworkParams& params, const QuadratureConfig& quad = {});

// Laplace transform of the inter-cluster interference by nested adaptive
// quadrature over cluster-center distance v and user distance u. The v-tail is
// truncated at tail_cutoff_multiplier * R. users_per_interfering_cluster
// defaults to params.users_per_cluster; the OMA baseline passes 1.
double laplace_inter_exact(double s, const NetworkParams& params,
                           const QuadratureConfig& quad = {},
                           int users_per_interfering_cluster = 0);

// Closed form obtained by moving the per-cluster power inside the expectation
// (Jensen step). Requires alpha > 2.
double laplace_inter_bound(double s, const NetworkParams& params,
                           int users_per_interfering_cluster = 0);

// Single inner factor of the undetected-inner product: the conditional
// transform of the rank-j (< m) user's interference. Exposed for the coverage
// recursion, which needs the factors individually.
double laplace_inner_rank_factor(double s, int j, int m, double r_hat,
                                 const NetworkParams& params, const QuadratureConfig& quad = {});

}  // namespace nomasim
