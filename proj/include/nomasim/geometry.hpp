#pragma once

#include <vector>

#include "nomasim/params.hpp"
#include "nomasim/rng.hpp"

namespace nomasim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Rank/conditioning arguments for the ordered-distance queries.
struct RankQuery {
    int rank = 1;                        // m, 1..users_per_cluster
    double conditioning_distance = 0.0;  // r_hat in (0, R]
    int secondary_rank = 0;              // j for the rank-conditional law
};

// One sampled network: cluster centers plus per-cluster users. Distances are
// to the owning BS and sorted ascending.
struct ClusterRealization {
    std::vector<Point> bs_positions;
    std::vector<std::vector<Point>> users;
    std::vector<std::vector<double>> ranked_distances;
};

// Homogeneous PPP on the square [0, L)^2. intensity >= 0 (empty set is valid).
std::vector<Point> sample_ppp(double intensity, double region_side, Rng& rng);

// Matern cluster realization: parent PPP of BSs, exactly users_per_cluster
// users uniform on the disk of radius cluster_radius around each BS.
ClusterRealization sample_mcp(const NetworkParams& params, Rng& rng);

// Density of the distance of the rank-m user among c users uniform on a disk
// of radius R (generalized Beta of the first kind). Zero outside [0, R].
double pdf_rank_distance(double r, int m, int c, double R);

// CDF companion of pdf_rank_distance (regularized incomplete Beta).
double cdf_rank_distance(double r, int m, int c, double R);

// Conditional density of an unordered user closer than the rank-m user:
// 2 r_in / r_hat^2 on (0, r_hat).
double pdf_inner_conditional(double r_in, double r_hat);

// Conditional density of an unordered user farther than the rank-m user:
// 2 r_out / (R^2 - r_hat^2) on (r_hat, R].
double pdf_outer_conditional(double r_out, double r_hat, double R);

// Conditional density of the rank-j user's distance given the rank-m user is
// at r_hat (both order-statistics branches, j < m and j > m).
double pdf_rank_conditional(double gamma_j, int j, int m, double r_hat, int c, double R);

// CDF companion of pdf_rank_conditional.
double cdf_rank_conditional(double gamma_j, int j, int m, double r_hat, int c, double R);

// Density of the distance u from a fixed point to a user uniform on a disk of
// radius R whose center is at distance v from that point. Zero off-support.
double pdf_intercluster_distance(double u, double v, double R);

}  // namespace nomasim
