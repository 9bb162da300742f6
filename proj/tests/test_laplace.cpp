#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nomasim/geometry.hpp"
#include "nomasim/laplace.hpp"
#include "nomasim/special.hpp"
#include "test_util.hpp"

using namespace nomasim;

namespace {

NetworkParams vi_params() {
    auto p = testutil::default_params(2.0);
    return p;
}

}  // namespace

TEST_CASE("intra perfect: trivial values") {
    const auto p = vi_params();
    CHECK(laplace_intra_perfect(0.0, 4, 0.4, p) == 1.0);
    CHECK(laplace_intra_perfect_numeric(0.0, 4, 0.4, p) == 1.0);
    // Farthest user sees no intra-cluster interference.
    for (double s : {0.01, 0.5, 10.0}) CHECK(laplace_intra_perfect(s, 8, 0.4, p) == 1.0);
    CHECK_THROWS_AS(laplace_intra_perfect(0.1, 4, 0.9, p), std::domain_error);
    CHECK_THROWS_AS(laplace_intra_perfect(-0.1, 4, 0.4, p), std::domain_error);
}

TEST_CASE("intra perfect: closed form equals quadrature (alpha=4)") {
    const auto p = vi_params();
    const double closed = laplace_intra_perfect_alpha4(0.05, 4, 0.4, p);
    const double numeric = laplace_intra_perfect_numeric(0.05, 4, 0.4, p);
    CHECK(std::fabs(closed - numeric) < 1e-8);

    // Full grid.
    for (int i = 1; i <= 5; ++i) {
        for (int j = 1; j <= 5; ++j) {
            const double s = 0.002 * std::pow(10.0, 0.6 * i);
            const double r_hat = p.cluster_radius * j / 5.5;
            const double a = laplace_intra_perfect_alpha4(s, 3, r_hat, p);
            const double b = laplace_intra_perfect_numeric(s, 3, r_hat, p);
            CHECK(std::fabs(a - b) < 1e-8);
        }
    }
}

TEST_CASE("intra perfect alpha4: edge behavior") {
    auto p = vi_params();
    CHECK(std::fabs(laplace_intra_perfect_alpha4(1e-12, 4, 0.4, p) - 1.0) < 1e-6);

    // Vanishing outer annulus at a vanishing Laplace argument.
    CHECK(std::fabs(laplace_intra_perfect_alpha4(1e-8, 4, p.cluster_radius - 1e-9, p) - 1.0) <
          1e-5);
    // At finite s the r_hat -> R limit is the rim point mass, matching the
    // numeric path evaluated just inside the boundary.
    const double rim = laplace_intra_perfect_alpha4(0.05, 4, p.cluster_radius - 1e-9, p);
    const double expected =
        std::pow(1.0 / (1.0 + 0.05 * p.tx_power * std::pow(p.cluster_radius, -4.0)), 4.0);
    CHECK(rim == doctest::Approx(expected).epsilon(1e-6));

    auto p6 = p;
    p6.pathloss_exponent = 3.5;
    CHECK_THROWS_AS(laplace_intra_perfect_alpha4(0.05, 4, 0.4, p6), std::invalid_argument);
    // Dispatcher falls back to quadrature for general alpha.
    const double v = laplace_intra_perfect(0.05, 4, 0.4, p6);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("intra additional factors") {
    const auto p = vi_params();
    CHECK(laplace_intra_additional(0.3, 3, 0.4, {1, 1}, p) == 1.0);
    CHECK(laplace_intra_additional(0.0, 3, 0.4, {0, 0}, p) == 1.0);
    CHECK_THROWS_AS(laplace_intra_additional(0.1, 3, 0.4, {1}, p), std::invalid_argument);

    // Monte-Carlo oracle for the undetected rank-1 factor at m=3.
    const double s = 0.05;
    const double r_hat = 0.4;
    Rng rng(101);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double g1 = r_hat * std::sqrt(rng.uniform());
        const double g2 = r_hat * std::sqrt(rng.uniform());
        const double g = std::min(g1, g2);  // rank 1 of the two inner users
        const double h = rng.exponential();
        sum += std::exp(-s * p.tx_power * h * std::pow(g, -4.0));
    }
    const double oracle = sum / n;
    const double analytic = laplace_intra_additional(s, 3, r_hat, {0, 1}, p);
    CHECK(std::fabs(analytic - oracle) / oracle < 0.005);
}

TEST_CASE("intra imperfect: composition and combination monotonicity") {
    const auto p = vi_params();
    const double s = 0.05;
    CHECK(laplace_intra_imperfect(s, 3, 0.4, {1, 1}, p) ==
          doctest::Approx(laplace_intra_perfect(s, 3, 0.4, p)).epsilon(1e-14));
    CHECK(laplace_intra_imperfect(0.0, 3, 0.4, {0, 1}, p) == 1.0);

    const double v00 = laplace_intra_imperfect(s, 3, 0.4, {0, 0}, p);
    const double v01 = laplace_intra_imperfect(s, 3, 0.4, {0, 1}, p);
    const double v11 = laplace_intra_imperfect(s, 3, 0.4, {1, 1}, p);
    CHECK(v00 <= v01);
    CHECK(v01 <= v11);

    // Componentwise monotonicity over random combination pairs.
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 5;
        std::vector<uint8_t> lo(4), hi(4);
        for (int j = 0; j < 4; ++j) {
            lo[static_cast<size_t>(j)] = rng.uniform() < 0.5 ? 0 : 1;
            hi[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)] || (rng.uniform() < 0.5);
        }
        const double a = laplace_intra_imperfect(s, m, 0.5, lo, p);
        const double b = laplace_intra_imperfect(s, m, 0.5, hi, p);
        CHECK(a <= b + 1e-12);
    }
}

TEST_CASE("all transforms: one at s=0, nonincreasing in s") {
    const auto p = vi_params();
    CHECK(laplace_inter_exact(0.0, p) == 1.0);
    CHECK(laplace_inter_bound(0.0, p) == 1.0);
    auto p0 = p;
    p0.bs_intensity = 0.0;
    for (double s : {0.05, 0.5}) CHECK(laplace_inter_exact(s, p0) == 1.0);

    double prev_i = 1.0, prev_e = 1.0, prev_b = 1.0;
    for (double s : {0.01, 0.03, 0.1, 0.3, 1.0}) {
        const double vi = laplace_intra_perfect(s, 4, 0.4, p);
        const double ve = laplace_inter_exact(s, p);
        const double vb = laplace_inter_bound(s, p);
        CHECK(vi > 0.0);
        CHECK(ve > 0.0);
        CHECK(vb > 0.0);
        CHECK(vi <= prev_i + 1e-12);
        CHECK(ve <= prev_e + 1e-12);
        CHECK(vb <= prev_b + 1e-12);
        prev_i = vi;
        prev_e = ve;
        prev_b = vb;
    }

    // Fewer interferers (larger m) can only increase the transform.
    for (double s : {0.05, 0.3}) {
        double prev = 0.0;
        for (int m = 1; m <= 8; ++m) {
            const double v = laplace_intra_perfect(s, m, 0.4, p);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("inter bound: closed form and ordering against the exact transform") {
    const auto p = vi_params();
    // alpha=4, single user per cluster: exponent reduces to a hand value via
    // B(1/2,3/2) = pi/2.
    const double s = 0.07;
    const double expected = std::exp(-M_PI * p.bs_intensity *
                                     std::sqrt(s * p.tx_power) * (M_PI / 2.0));
    CHECK(laplace_inter_bound(s, p, 1) == doctest::Approx(expected).epsilon(1e-12));

    auto bad = p;
    bad.pathloss_exponent = 2.0;
    CHECK_THROWS_AS(laplace_inter_bound(0.1, bad), std::domain_error);

    // Numerical ordering check at 10 s-values: the closed form sits above the
    // exact transform (optimistic coverage side).
    for (int i = 1; i <= 10; ++i) {
        const double sv = 0.01 * std::pow(1.9, i - 1);
        const double exact = laplace_inter_exact(sv, p);
        const double bound = laplace_inter_bound(sv, p);
        CHECK(bound >= exact - 1e-10);
    }
}

TEST_CASE("inter exact: light Monte-Carlo cross-check") {
    // Heavier 1% validation lives in the acceptance suite; this catches gross
    // regressions quickly.
    auto p = vi_params();
    Rng rng(404);
    const double s = 0.05;
    const double L = p.region_side;
    double sum = 0.0;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        double interference = 0.0;
        const int clusters = rng.poisson(p.bs_intensity * L * L);
        for (int k = 0; k < clusters; ++k) {
            const double cx = rng.uniform(L) - 0.5 * L;
            const double cy = rng.uniform(L) - 0.5 * L;
            for (int u = 0; u < p.users_per_cluster; ++u) {
                double ox, oy;
                rng.disk_point(p.cluster_radius, ox, oy);
                double dx = std::fabs(cx + ox), dy = std::fabs(cy + oy);
                dx = std::min(std::fmod(dx, L), L - std::fmod(dx, L));
                dy = std::min(std::fmod(dy, L), L - std::fmod(dy, L));
                const double d2 = dx * dx + dy * dy;
                interference += p.tx_power * rng.exponential() / (d2 * d2);
            }
        }
        sum += std::exp(-s * interference);
    }
    const double mc = sum / n;
    const double analytic = laplace_inter_exact(s, p);
    CHECK(std::fabs(analytic - mc) / mc < 0.02);
}
