#include "nomasim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nomasim/special.hpp"

namespace nomasim {

std::vector<Point> sample_ppp(double intensity, double region_side, Rng& rng) {
    if (intensity < 0.0) throw std::domain_error("sample_ppp: intensity must be >= 0");
    if (!(region_side > 0.0)) throw std::domain_error("sample_ppp: region_side must be > 0");
    const int count = rng.poisson(intensity * region_side * region_side);
    std::vector<Point> points(static_cast<size_t>(count));
    for (auto& p : points) {
        p.x = rng.uniform(region_side);
        p.y = rng.uniform(region_side);
    }
    return points;
}

ClusterRealization sample_mcp(const NetworkParams& params, Rng& rng) {
    params.validate();
    ClusterRealization real;
    real.bs_positions = sample_ppp(params.bs_intensity, params.region_side, rng);
    const size_t n_bs = real.bs_positions.size();
    const int c = params.users_per_cluster;
    real.users.resize(n_bs);
    real.ranked_distances.resize(n_bs);
    std::vector<double> dist(static_cast<size_t>(c));
    std::vector<int> order(static_cast<size_t>(c));
    for (size_t i = 0; i < n_bs; ++i) {
        std::vector<Point> raw(static_cast<size_t>(c));
        for (int k = 0; k < c; ++k) {
            double dx, dy;
            rng.disk_point(params.cluster_radius, dx, dy);
            raw[static_cast<size_t>(k)] = {real.bs_positions[i].x + dx, real.bs_positions[i].y + dy};
            dist[static_cast<size_t>(k)] = std::hypot(dx, dy);
        }
        std::iota(order.begin(), order.end(), 0);
        // Ties broken by user index via stable sort.
        std::stable_sort(order.begin(), order.end(),
                         [&dist](int a, int b) { return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)]; });
        real.users[i].resize(static_cast<size_t>(c));
        real.ranked_distances[i].resize(static_cast<size_t>(c));
        for (int k = 0; k < c; ++k) {
            real.users[i][static_cast<size_t>(k)] = raw[static_cast<size_t>(order[static_cast<size_t>(k)])];
            real.ranked_distances[i][static_cast<size_t>(k)] = dist[static_cast<size_t>(order[static_cast<size_t>(k)])];
        }
    }
    return real;
}

double pdf_rank_distance(double r, int m, int c, double R) {
    if (m < 1 || m > c) throw std::domain_error("pdf_rank_distance: need 1 <= m <= c");
    if (!(R > 0.0)) throw std::domain_error("pdf_rank_distance: R must be > 0");
    if (r < 0.0 || r > R) return 0.0;
    const double z = (r * r) / (R * R);
    return 2.0 * std::pow(r, 2 * m - 1) * std::pow(1.0 - z, c - m) /
           (std::pow(R, 2 * m) * beta_fn(m, c - m + 1));
}

double cdf_rank_distance(double r, int m, int c, double R) {
    if (m < 1 || m > c) throw std::domain_error("cdf_rank_distance: need 1 <= m <= c");
    if (!(R > 0.0)) throw std::domain_error("cdf_rank_distance: R must be > 0");
    if (r <= 0.0) return 0.0;
    if (r >= R) return 1.0;
    return regularized_incomplete_beta((r * r) / (R * R), m, c - m + 1);
}

double pdf_inner_conditional(double r_in, double r_hat) {
    if (!(r_hat > 0.0)) throw std::domain_error("pdf_inner_conditional: r_hat must be > 0");
    if (r_in <= 0.0 || r_in >= r_hat) return 0.0;
    return 2.0 * r_in / (r_hat * r_hat);
}

double pdf_outer_conditional(double r_out, double r_hat, double R) {
    if (!(r_hat > 0.0) || r_hat >= R)
        throw std::domain_error("pdf_outer_conditional: need 0 < r_hat < R");
    if (r_out <= r_hat || r_out > R) return 0.0;
    return 2.0 * r_out / (R * R - r_hat * r_hat);
}

double pdf_rank_conditional(double gamma_j, int j, int m, double r_hat, int c, double R) {
    if (j == m) throw std::domain_error("pdf_rank_conditional: j must differ from m");
    if (m < 1 || m > c || j < 1 || j > c)
        throw std::domain_error("pdf_rank_conditional: ranks must lie in 1..c");
    if (!(r_hat > 0.0) || r_hat > R)
        throw std::domain_error("pdf_rank_conditional: need 0 < r_hat <= R");
    if (j < m) {
        // Rank j of m-1 i.i.d. inner distances with density 2g/r_hat^2.
        if (gamma_j <= 0.0 || gamma_j >= r_hat) return 0.0;
        const double coef = std::exp(std::lgamma(m) - std::lgamma(m - j) - std::lgamma(j));
        return coef * 2.0 * std::pow(gamma_j, 2 * j - 1) *
               std::pow(r_hat * r_hat - gamma_j * gamma_j, m - j - 1) /
               std::pow(r_hat, 2 * m - 2);
    }
    // Rank j-m of c-m i.i.d. outer distances with density 2g/(R^2 - r_hat^2).
    if (gamma_j <= r_hat || gamma_j > R) return 0.0;
    const double coef =
        std::exp(std::lgamma(c - m + 1) - std::lgamma(j - m) - std::lgamma(c - j + 1));
    return coef * 2.0 * gamma_j *
           std::pow(gamma_j * gamma_j - r_hat * r_hat, j - m - 1) *
           std::pow(R * R - gamma_j * gamma_j, c - j) /
           std::pow(R * R - r_hat * r_hat, c - m);
}

double cdf_rank_conditional(double gamma_j, int j, int m, double r_hat, int c, double R) {
    if (j == m) throw std::domain_error("cdf_rank_conditional: j must differ from m");
    if (j < m) {
        if (gamma_j <= 0.0) return 0.0;
        if (gamma_j >= r_hat) return 1.0;
        const double w = (gamma_j * gamma_j) / (r_hat * r_hat);
        return regularized_incomplete_beta(w, j, m - j);
    }
    if (gamma_j <= r_hat) return 0.0;
    if (gamma_j >= R) return 1.0;
    const double w = (gamma_j * gamma_j - r_hat * r_hat) / (R * R - r_hat * r_hat);
    return regularized_incomplete_beta(w, j - m, c - j + 1);
}

double pdf_intercluster_distance(double u, double v, double R) {
    if (!(R > 0.0)) throw std::domain_error("pdf_intercluster_distance: R must be > 0");
    if (v < 0.0) throw std::domain_error("pdf_intercluster_distance: v must be >= 0");
    if (u <= 0.0) return 0.0;
    if (v == 0.0) return u <= R ? 2.0 * u / (R * R) : 0.0;
    if (v < R && u <= R - v) return 2.0 * u / (R * R);
    if (u < std::fabs(v - R) || u > v + R) return 0.0;
    // Fraction of the circle of radius u around the receiver that lies inside
    // the interfering disk: arccos form of the overlap angle.
    double arg = (u * u + v * v - R * R) / (2.0 * u * v);
    arg = std::clamp(arg, -1.0, 1.0);
    constexpr double kPi = 3.14159265358979323846;
    return 2.0 * u / (kPi * R * R) * std::acos(arg);
}

}  // namespace nomasim
