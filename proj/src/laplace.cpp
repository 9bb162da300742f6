#include "nomasim/laplace.hpp"

#include <cmath>
#include <stdexcept>

#include "nomasim/geometry.hpp"
#include "nomasim/special.hpp"

namespace nomasim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_intra_args(double s, int m, double r_hat, const NetworkParams& params) {
    if (s < 0.0) throw std::domain_error("laplace: s must be >= 0");
    if (m < 1 || m > params.users_per_cluster)
        throw std::domain_error("laplace: rank outside 1..users_per_cluster");
    if (!(r_hat > 0.0) || r_hat > params.cluster_radius)
        throw std::domain_error("laplace: r_hat outside (0, R]");
}

}  // namespace

double laplace_intra_perfect_numeric(double s, int m, double r_hat, const NetworkParams& params,
                                     const QuadratureConfig& quad) {
    check_intra_args(s, m, r_hat, params);
    const int exponent = params.users_per_cluster - m;
    if (exponent == 0 || s == 0.0) return 1.0;
    const double R = params.cluster_radius;
    const double sp = s * params.tx_power;
    if (r_hat >= R) {
        // Degenerate annulus: the conditional law collapses onto the rim.
        return std::pow(1.0 / (1.0 + sp * std::pow(R, -params.pathloss_exponent)), exponent);
    }
    const double alpha = params.pathloss_exponent;
    const double norm = R * R - r_hat * r_hat;
    const double inner = integrate(
        [&](double r) {
            return 2.0 * r / norm / (1.0 + sp * std::pow(r, -alpha));
        },
        r_hat, R, quad);
    return std::pow(inner, exponent);
}

double laplace_intra_perfect_alpha4(double s, int m, double r_hat, const NetworkParams& params) {
    if (params.pathloss_exponent != 4.0)
        throw std::invalid_argument("laplace_intra_perfect_alpha4: requires pathloss_exponent == 4");
    check_intra_args(s, m, r_hat, params);
    const int exponent = params.users_per_cluster - m;
    if (exponent == 0 || s == 0.0) return 1.0;
    const double R2 = params.cluster_radius * params.cluster_radius;
    const double rh2 = r_hat * r_hat;
    const double q = std::sqrt(params.tx_power * s);
    // atan(R^2/q) - atan(rh^2/q) written with the atan-difference identity so
    // the r_hat -> R limit stays finite.
    const double delta = R2 - rh2;
    const double t = q * delta / (q * q + rh2 * R2);
    double bracket;
    if (t < 1e-6) {
        bracket = 1.0 - q * q / (q * q + rh2 * R2) * (1.0 - t * t / 3.0);
    } else {
        bracket = 1.0 - q * std::atan(t) / delta;
    }
    return std::pow(bracket, exponent);
}

double laplace_intra_perfect(double s, int m, double r_hat, const NetworkParams& params,
                             const QuadratureConfig& quad) {
    if (params.pathloss_exponent == 4.0)
        return laplace_intra_perfect_alpha4(s, m, r_hat, params);
    return laplace_intra_perfect_numeric(s, m, r_hat, params, quad);
}

double laplace_inner_rank_factor(double s, int j, int m, double r_hat,
                                 const NetworkParams& params, const QuadratureConfig& quad) {
    check_intra_args(s, m, r_hat, params);
    if (j < 1 || j >= m) throw std::domain_error("laplace_inner_rank_factor: need 1 <= j < m");
    if (s == 0.0) return 1.0;
    const double sp = s * params.tx_power;
    const double alpha = params.pathloss_exponent;
    // Substituting w=(gamma/r_hat)^2 puts the rank-j conditional density into
    // Beta(j, m-j) form on [0,1].
    const double inv_beta = 1.0 / beta_fn(j, m - j);
    return integrate(
        [&](double w) {
            const double gamma = r_hat * std::sqrt(w);
            const double kernel = 1.0 / (1.0 + sp * std::pow(gamma, -alpha));
            return kernel * inv_beta * std::pow(w, j - 1) * std::pow(1.0 - w, m - j - 1);
        },
        0.0, 1.0, quad);
}

double laplace_intra_additional(double s, int m, double r_hat,
                                const std::vector<uint8_t>& detected,
                                const NetworkParams& params, const QuadratureConfig& quad) {
    check_intra_args(s, m, r_hat, params);
    if (detected.size() != static_cast<size_t>(m - 1))
        throw std::invalid_argument("laplace_intra_additional: combination must have m-1 entries");
    if (s == 0.0) return 1.0;
    double value = 1.0;
    for (int j = 1; j < m; ++j)
        if (!detected[static_cast<size_t>(j - 1)])
            value *= laplace_inner_rank_factor(s, j, m, r_hat, params, quad);
    return value;
}

double laplace_intra_imperfect(double s, int m, double r_hat,
                               const std::vector<uint8_t>& detected,
                               const NetworkParams& params, const QuadratureConfig& quad) {
    return laplace_intra_perfect(s, m, r_hat, params, quad) *
           laplace_intra_additional(s, m, r_hat, detected, params, quad);
}

namespace {

// 1 - (inner integral)^c evaluated without cancellation: integrates
// J(v) = E_u[ s P_u / (u^alpha + s P_u) ] and maps through expm1/log1p.
class InterOuterIntegrand {
public:
    InterOuterIntegrand(double sp, const NetworkParams& params, int cbar,
                        const QuadratureConfig& quad)
        : sp_(sp), alpha_(params.pathloss_exponent), R_(params.cluster_radius),
          cbar_(cbar), quad_(quad) {}

    double operator()(double v) const {
        const double j = mean_penalty(v);
        if (j <= 0.0) return 0.0;
        if (j >= 1.0) return v;
        return -std::expm1(cbar_ * std::log1p(-j)) * v;
    }

private:
    double kernel(double u) const { return sp_ / (std::pow(u, alpha_) + sp_); }

    // E_u[1 - 1/(1 + s P_u u^-alpha)] against the disk-overlap density.
    double mean_penalty(double v) const {
        double total = 0.0;
        if (v < R_) {
            const double split = R_ - v;
            if (split > 0.0) {
                total += integrate(
                    [&](double u) { return kernel(u) * 2.0 * u / (R_ * R_); }, 0.0, split, quad_);
            }
            if (v > 0.0) {
                total += integrate(
                    [&](double u) { return kernel(u) * pdf_intercluster_distance(u, v, R_); },
                    split, v + R_, quad_);
            }
        } else {
            total += integrate(
                [&](double u) { return kernel(u) * pdf_intercluster_distance(u, v, R_); },
                v - R_, v + R_, quad_);
        }
        return total;
    }

    double sp_;
    double alpha_;
    double R_;
    int cbar_;
    QuadratureConfig quad_;
};

}  // namespace

double laplace_inter_exact(double s, const NetworkParams& params, const QuadratureConfig& quad,
                           int users_per_interfering_cluster) {
    if (s < 0.0) throw std::domain_error("laplace_inter_exact: s must be >= 0");
    const int cbar = users_per_interfering_cluster > 0 ? users_per_interfering_cluster
                                                       : params.users_per_cluster;
    if (s == 0.0 || params.bs_intensity == 0.0) return 1.0;

    const double R = params.cluster_radius;
    const double sp = s * params.tx_power;
    const InterOuterIntegrand g(sp, params, cbar, quad);

    QuadratureConfig outer = quad;
    const double a1 = integrate(g, 0.0, R, outer);

    // Tail: scan doubling blocks and stop once the outer integrand has decayed
    // below 1e-12 of its observed peak, hard-capped by the config multiplier.
    const double v_cap = quad.tail_cutoff_multiplier * R;
    double peak = g(R);
    double v_hi = R;
    while (v_hi < v_cap) {
        const double v_next = std::min(v_hi * 2.0, v_cap);
        peak = std::max(peak, g(v_next));
        v_hi = v_next;
        if (g(v_hi) < 1e-12 * peak) break;
    }
    double a2 = 0.0;
    double lo = R;
    double block = R;
    while (lo < v_hi) {
        const double hi = std::min(lo + block, v_hi);
        a2 += integrate(g, lo, hi, outer);
        lo = hi;
        block *= 2.0;
    }

    return std::exp(-2.0 * kPi * params.bs_intensity * (a1 + a2));
}

double laplace_inter_bound(double s, const NetworkParams& params,
                           int users_per_interfering_cluster) {
    if (s < 0.0) throw std::domain_error("laplace_inter_bound: s must be >= 0");
    const double alpha = params.pathloss_exponent;
    if (!(alpha > 2.0)) throw std::domain_error("laplace_inter_bound: requires alpha > 2");
    const int cbar = users_per_interfering_cluster > 0 ? users_per_interfering_cluster
                                                       : params.users_per_cluster;
    if (s == 0.0) return 1.0;
    const double sp = s * params.tx_power;
    const double exponent = kPi * params.bs_intensity * std::pow(sp, 2.0 / alpha) * cbar *
                            beta_fn(1.0 - 2.0 / alpha, cbar + 2.0 / alpha);
    return std::exp(-exponent);
}

}  // namespace nomasim
