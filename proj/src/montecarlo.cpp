#include "nomasim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nomasim/geometry.hpp"

namespace nomasim {

namespace {

constexpr int64_t kChunk = 1024;

double wrapped_delta(double d, double region_side) {
    d = std::fabs(d);
    d = std::fmod(d, region_side);
    return std::min(d, region_side - d);
}

double distance(const Point& a, const Point& b, double region_side, bool wrap) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    if (wrap) {
        dx = wrapped_delta(dx, region_side);
        dy = wrapped_delta(dy, region_side);
    }
    return std::sqrt(dx * dx + dy * dy);
}

double inv_pow(double d, double alpha) {
    if (alpha == 4.0) {
        const double d2 = d * d;
        return 1.0 / (d2 * d2);
    }
    return std::pow(d, -alpha);
}

// Shared rate target lookup that tolerates PPP cells loaded beyond the
// nominal user count (clamps to the last per-rank entry).
double sinr_target_for_possibly_deep_rank(const NetworkParams& params, int m) {
    if (params.rate_targets.size() == 1) return params.sinr_target_for_rank(1);
    const int capped = std::min<int>(m, static_cast<int>(params.rate_targets.size()));
    return params.sinr_target_for_rank(capped);
}

std::vector<Point> sample_parents(const NetworkParams& params, const SimOptions& options,
                                  Rng& rng, int min_count) {
    const double L = params.region_side;
    int count;
    if (options.fixed_cluster_count) {
        count = static_cast<int>(std::llround(params.bs_intensity * L * L));
    } else {
        count = rng.poisson(params.bs_intensity * L * L);
    }
    count = std::max(count, min_count);
    std::vector<Point> points(static_cast<size_t>(count));
    for (auto& p : points) {
        p.x = rng.uniform(L);
        p.y = rng.uniform(L);
    }
    return points;
}

// Decode chain shared by both baselines. ranked_power holds S_(1) >= ranking
// order; the result arrays are sized to ranked_power.
void run_decode_chain(const NetworkParams& params, SicMode mode,
                      const std::vector<double>& ranked_power, double inter_power,
                      TrialResult& out) {
    const int K = static_cast<int>(ranked_power.size());
    const double n0 = params.noise_power;
    const double theta = params.detection_threshold;
    const double inf = std::numeric_limits<double>::infinity();

    out.ranks = K;
    out.decode_success.assign(static_cast<size_t>(K), 0);
    out.rate_covered.assign(static_cast<size_t>(K), 0);
    out.sinr.assign(static_cast<size_t>(K), 0.0);
    out.received_power = ranked_power;
    out.intra_power.assign(static_cast<size_t>(K), 0.0);
    out.inter_power = inter_power;

    // Residual same-cell interference from ranks beyond m.
    std::vector<double> suffix(static_cast<size_t>(K) + 1, 0.0);
    for (int m = K - 1; m >= 0; --m)
        suffix[static_cast<size_t>(m)] = suffix[static_cast<size_t>(m) + 1] + ranked_power[static_cast<size_t>(m)];

    double undetected_inner = 0.0;  // imperfect-SIC error propagation
    bool chain_ok = true;           // worst-case model
    for (int m = 1; m <= K; ++m) {
        const size_t i = static_cast<size_t>(m - 1);
        const double gamma_m = mode == SicMode::Oma ? params.oma_sinr_target()
                                                    : sinr_target_for_possibly_deep_rank(params, m);
        double intra = 0.0;
        switch (mode) {
            case SicMode::PerfectSic:
            case SicMode::WorstCaseSic:
                intra = suffix[static_cast<size_t>(m)];
                break;
            case SicMode::ImperfectSic:
                intra = suffix[static_cast<size_t>(m)] + undetected_inner;
                break;
            case SicMode::Oma:
                intra = 0.0;
                break;
        }
        out.intra_power[i] = intra;
        const double denom = intra + inter_power + n0;
        const double sinr = denom > 0.0 ? ranked_power[i] / denom : inf;
        out.sinr[i] = sinr;

        const bool detected = sinr >= theta;
        const bool rate_ok = sinr >= gamma_m;
        switch (mode) {
            case SicMode::PerfectSic:
            case SicMode::Oma:
                out.decode_success[i] = detected;
                out.rate_covered[i] = rate_ok;
                break;
            case SicMode::ImperfectSic:
                out.decode_success[i] = detected;
                out.rate_covered[i] = rate_ok;
                if (!detected) undetected_inner += ranked_power[i];
                break;
            case SicMode::WorstCaseSic:
                out.decode_success[i] = chain_ok && detected;
                out.rate_covered[i] = chain_ok && rate_ok;
                chain_ok = chain_ok && detected;
                break;
        }
    }
}

// Ranks the representative users per the ranking rule; emits powers in decode
// order (ties broken by user index).
void rank_users(const std::vector<double>& dist, const std::vector<double>& power,
                RankingRule rule, std::vector<double>& ranked_power) {
    const int c = static_cast<int>(dist.size());
    std::vector<int> order(static_cast<size_t>(c));
    std::iota(order.begin(), order.end(), 0);
    if (rule == RankingRule::ByDistance) {
        std::stable_sort(order.begin(), order.end(), [&dist](int a, int b) {
            return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
        });
    } else {
        std::stable_sort(order.begin(), order.end(), [&power](int a, int b) {
            return power[static_cast<size_t>(a)] > power[static_cast<size_t>(b)];
        });
    }
    ranked_power.resize(static_cast<size_t>(c));
    for (int k = 0; k < c; ++k)
        ranked_power[static_cast<size_t>(k)] = power[static_cast<size_t>(order[static_cast<size_t>(k)])];
}

TrialResult run_mcp_trial(const NetworkParams& params, SicMode mode, const SimOptions& options,
                          Rng& rng) {
    const double L = params.region_side;
    const double alpha = params.pathloss_exponent;
    const double pu = params.tx_power;
    const int c = params.users_per_cluster;
    const Point center{0.5 * L, 0.5 * L};

    Point rep;
    std::vector<Point> interferers;
    if (options.representative == RepresentativeRule::PalmCenter) {
        rep = center;
        interferers = sample_parents(params, options, rng, 0);
    } else {
        std::vector<Point> parents;
        do {
            parents = sample_parents(params, options, rng, options.fixed_cluster_count ? 1 : 0);
        } while (parents.empty());
        size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < parents.size(); ++i) {
            const double d = distance(parents[i], center, L, options.wraparound);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        rep = parents[best];
        parents.erase(parents.begin() + static_cast<std::ptrdiff_t>(best));
        interferers = std::move(parents);
    }

    // Representative cluster: offsets then fading, one user at a time.
    std::vector<double> dist(static_cast<size_t>(c));
    std::vector<double> power(static_cast<size_t>(c));
    for (int k = 0; k < c; ++k) {
        double dx, dy;
        rng.disk_point(params.cluster_radius, dx, dy);
        const double d = std::sqrt(dx * dx + dy * dy);
        dist[static_cast<size_t>(k)] = d;
        power[static_cast<size_t>(k)] = pu * rng.exponential() * inv_pow(d, alpha);
    }
    std::vector<double> ranked_power;
    rank_users(dist, power, options.ranking_rule, ranked_power);

    // Interfering clusters: every user transmits in NOMA, a single uniformly
    // placed active user per cluster in OMA.
    const int users_per_interferer = mode == SicMode::Oma ? 1 : c;
    double inter = 0.0;
    for (const Point& parent : interferers) {
        for (int k = 0; k < users_per_interferer; ++k) {
            double dx, dy;
            rng.disk_point(params.cluster_radius, dx, dy);
            const Point pos{parent.x + dx, parent.y + dy};
            const double d = distance(pos, rep, L, options.wraparound);
            inter += pu * rng.exponential() * inv_pow(d, alpha);
        }
    }

    TrialResult out;
    run_decode_chain(params, mode, ranked_power, inter, out);
    return out;
}

TrialResult run_ppp_trial(const NetworkParams& params, SicMode mode, const SimOptions& options,
                          double user_intensity, Rng& rng) {
    const double L = params.region_side;
    const double alpha = params.pathloss_exponent;
    const double pu = params.tx_power;
    const Point center{0.5 * L, 0.5 * L};

    std::vector<Point> bss;
    size_t rep_idx = 0;
    if (options.representative == RepresentativeRule::PalmCenter) {
        bss = sample_parents(params, options, rng, 0);
        rep_idx = bss.size();
        bss.push_back(center);
    } else {
        do {
            bss = sample_parents(params, options, rng, options.fixed_cluster_count ? 1 : 0);
        } while (bss.empty());
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < bss.size(); ++i) {
            const double d = distance(bss[i], center, L, options.wraparound);
            if (d < best_d) {
                best_d = d;
                rep_idx = i;
            }
        }
    }
    const Point rep = bss[rep_idx];

    const std::vector<Point> users = sample_ppp(user_intensity, L, rng);
    std::vector<double> fade(users.size());
    for (auto& h : fade) h = rng.exponential();

    // Minimum-distance association.
    std::vector<size_t> owner(users.size());
    for (size_t u = 0; u < users.size(); ++u) {
        double best_d = std::numeric_limits<double>::infinity();
        size_t best = 0;
        for (size_t b = 0; b < bss.size(); ++b) {
            const double d = distance(users[u], bss[b], L, options.wraparound);
            if (d < best_d) {
                best_d = d;
                best = b;
            }
        }
        owner[u] = best;
    }

    std::vector<double> member_dist;
    std::vector<double> member_power;
    for (size_t u = 0; u < users.size(); ++u) {
        if (owner[u] != rep_idx) continue;
        const double d = distance(users[u], rep, L, options.wraparound);
        member_dist.push_back(d);
        member_power.push_back(pu * fade[u] * inv_pow(d, alpha));
    }
    std::vector<double> ranked_power;
    rank_users(member_dist, member_power, options.ranking_rule, ranked_power);

    double inter = 0.0;
    if (mode == SicMode::Oma) {
        // One active user per nonempty foreign cell, chosen uniformly.
        std::vector<std::vector<size_t>> cell_members(bss.size());
        for (size_t u = 0; u < users.size(); ++u)
            if (owner[u] != rep_idx) cell_members[owner[u]].push_back(u);
        for (size_t b = 0; b < bss.size(); ++b) {
            if (b == rep_idx || cell_members[b].empty()) continue;
            const size_t pick = std::min<size_t>(
                static_cast<size_t>(rng.uniform() * static_cast<double>(cell_members[b].size())),
                cell_members[b].size() - 1);
            const size_t u = cell_members[b][pick];
            const double d = distance(users[u], rep, L, options.wraparound);
            inter += pu * fade[u] * inv_pow(d, alpha);
        }
    } else {
        for (size_t u = 0; u < users.size(); ++u) {
            if (owner[u] == rep_idx) continue;
            const double d = distance(users[u], rep, L, options.wraparound);
            inter += pu * fade[u] * inv_pow(d, alpha);
        }
    }

    TrialResult out;
    run_decode_chain(params, mode, ranked_power, inter, out);
    return out;
}

// Integer sufficient statistics; exact merges make estimates independent of
// the worker count.
struct Accumulator {
    explicit Accumulator(int c_track)
        : covered(static_cast<size_t>(c_track), 0),
          decoded(static_cast<size_t>(c_track), 0),
          samples(static_cast<size_t>(c_track), 0) {}

    std::vector<int64_t> covered;
    std::vector<int64_t> decoded;
    std::vector<int64_t> samples;
    int64_t sum_k = 0;   // covered users per trial
    int64_t sum_k2 = 0;
    int64_t sum_kbig = 0;   // realized users per trial
    int64_t sum_kbig2 = 0;
    int64_t sum_cross = 0;
    int64_t trials = 0;

    void add(const TrialResult& t) {
        int64_t k = 0;
        for (int m = 0; m < t.ranks; ++m) {
            if (m < static_cast<int>(samples.size())) {
                ++samples[static_cast<size_t>(m)];
                covered[static_cast<size_t>(m)] += t.rate_covered[static_cast<size_t>(m)];
                decoded[static_cast<size_t>(m)] += t.decode_success[static_cast<size_t>(m)];
            }
            k += t.rate_covered[static_cast<size_t>(m)];
        }
        const int64_t kk = t.ranks;
        sum_k += k;
        sum_k2 += k * k;
        sum_kbig += kk;
        sum_kbig2 += kk * kk;
        sum_cross += k * kk;
        ++trials;
    }

    void merge(const Accumulator& o) {
        for (size_t i = 0; i < covered.size(); ++i) {
            covered[i] += o.covered[i];
            decoded[i] += o.decoded[i];
            samples[i] += o.samples[i];
        }
        sum_k += o.sum_k;
        sum_k2 += o.sum_k2;
        sum_kbig += o.sum_kbig;
        sum_kbig2 += o.sum_kbig2;
        sum_cross += o.sum_cross;
        trials += o.trials;
    }
};

CoverageEstimate binomial_estimate(int64_t successes, int64_t n, SicMode mode) {
    CoverageEstimate e;
    e.mode = mode;
    e.n_trials = n;
    if (n > 0) {
        const double p = static_cast<double>(successes) / static_cast<double>(n);
        e.estimate = p;
        e.half_width_95 = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    }
    return e;
}

SimulationSummary summarize(const Accumulator& acc, SicMode mode) {
    SimulationSummary s;
    s.mode = mode;
    s.n_trials = acc.trials;
    const size_t c = acc.covered.size();
    s.per_rank.reserve(c);
    s.detection_per_rank.reserve(c);
    s.rank_samples.assign(acc.samples.begin(), acc.samples.end());
    for (size_t m = 0; m < c; ++m) {
        s.per_rank.push_back(binomial_estimate(acc.covered[m], acc.samples[m], mode));
        s.detection_per_rank.push_back(binomial_estimate(acc.decoded[m], acc.samples[m], mode));
    }
    s.undefined = acc.sum_kbig == 0;
    s.mean_cluster.mode = mode;
    s.mean_cluster.n_trials = acc.trials;
    if (!s.undefined && acc.trials > 1) {
        const double n = static_cast<double>(acc.trials);
        const double p = static_cast<double>(acc.sum_k) / static_cast<double>(acc.sum_kbig);
        // Ratio-estimator variance (per-trial delta method); exact binomial
        // shape when every trial realizes the same user count.
        const double resid = static_cast<double>(acc.sum_k2) - 2.0 * p * static_cast<double>(acc.sum_cross) +
                             p * p * static_cast<double>(acc.sum_kbig2);
        const double mean_load = static_cast<double>(acc.sum_kbig) / n;
        const double var_p = std::max(resid, 0.0) / (n - 1.0) / n / (mean_load * mean_load);
        s.mean_cluster.estimate = p;
        s.mean_cluster.half_width_95 = 1.96 * std::sqrt(var_p);
    }
    return s;
}

template <class TrialFn>
SimulationSummary run_batch(const NetworkParams& params, SicMode mode, const SimOptions& options,
                            TrialFn&& trial_at, bool parallel) {
    params.validate();
    if (options.n_trials < 100)
        throw std::invalid_argument("coverage estimation requires n_trials >= 100");
    const int c_track = params.users_per_cluster;
    const int64_t n = options.n_trials;
    const int64_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(static_cast<size_t>(n_chunks), Accumulator(c_track));

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t ci = 0; ci < n_chunks; ++ci) {
            const int64_t lo = ci * kChunk;
            const int64_t hi = std::min(lo + kChunk, n);
            for (int64_t t = lo; t < hi; ++t) partial[static_cast<size_t>(ci)].add(trial_at(t));
        }
    } else {
        for (int64_t ci = 0; ci < n_chunks; ++ci) {
            const int64_t lo = ci * kChunk;
            const int64_t hi = std::min(lo + kChunk, n);
            for (int64_t t = lo; t < hi; ++t) partial[static_cast<size_t>(ci)].add(trial_at(t));
        }
    }

    Accumulator total(c_track);
    for (const auto& a : partial) total.merge(a);
    return summarize(total, mode);
}

}  // namespace

TrialResult run_trial(const NetworkParams& params, SicMode mode, const SimOptions& options,
                      Rng& rng) {
    params.validate();
    if (options.baseline == Baseline::PppUsers)
        return run_ppp_trial(params, mode, options,
                             params.users_per_cluster * params.bs_intensity, rng);
    return run_mcp_trial(params, mode, options, rng);
}

SimulationSummary estimate_coverage(const NetworkParams& params, SicMode mode,
                                    const SimOptions& options) {
    auto trial_at = [&](int64_t t) {
        Rng rng = trial_rng(options.rng_seed, static_cast<uint64_t>(t));
        return options.baseline == Baseline::PppUsers
                   ? run_ppp_trial(params, mode, options,
                                   params.users_per_cluster * params.bs_intensity, rng)
                   : run_mcp_trial(params, mode, options, rng);
    };
    return run_batch(params, mode, options, trial_at, true);
}

SimulationSummary estimate_coverage_serial(const NetworkParams& params, SicMode mode,
                                           const SimOptions& options) {
    auto trial_at = [&](int64_t t) {
        Rng rng = trial_rng(options.rng_seed, static_cast<uint64_t>(t));
        return options.baseline == Baseline::PppUsers
                   ? run_ppp_trial(params, mode, options,
                                   params.users_per_cluster * params.bs_intensity, rng)
                   : run_mcp_trial(params, mode, options, rng);
    };
    return run_batch(params, mode, options, trial_at, false);
}

SimulationSummary estimate_ppp_baseline(const NetworkParams& params, SicMode mode,
                                        const SimOptions& options,
                                        double user_intensity_override) {
    const double intensity = user_intensity_override >= 0.0
                                 ? user_intensity_override
                                 : params.users_per_cluster * params.bs_intensity;
    auto trial_at = [&](int64_t t) {
        Rng rng = trial_rng(options.rng_seed, static_cast<uint64_t>(t));
        return run_ppp_trial(params, mode, options, intensity, rng);
    };
    return run_batch(params, mode, options, trial_at, true);
}

std::vector<LaplaceFunctionalPoint> estimate_laplace_functional(
    const NetworkParams& params, const std::vector<double>& s_grid, LaplaceWhich which,
    const SimOptions& options, int rank, double r_bin_lo, double r_bin_hi) {
    params.validate();
    for (double s : s_grid)
        if (s < 0.0) throw std::domain_error("estimate_laplace_functional: s must be >= 0");
    if (which == LaplaceWhich::IntraPerfect) {
        if (rank < 1 || rank > params.users_per_cluster)
            throw std::domain_error("estimate_laplace_functional: bad rank");
        if (!(r_bin_lo >= 0.0) || !(r_bin_hi > r_bin_lo) || r_bin_hi > params.cluster_radius)
            throw std::domain_error("estimate_laplace_functional: bad conditioning bin");
    }

    const size_t ns = s_grid.size();
    const int64_t n = options.n_trials;
    const int64_t n_chunks = (n + kChunk - 1) / kChunk;

    struct ChunkSums {
        std::vector<double> sum, sum2;
        int64_t accepted = 0;
    };
    std::vector<ChunkSums> partial(static_cast<size_t>(n_chunks));
    for (auto& p : partial) {
        p.sum.assign(ns, 0.0);
        p.sum2.assign(ns, 0.0);
    }

    const double alpha = params.pathloss_exponent;
    const double pu = params.tx_power;
    const int c = params.users_per_cluster;

#pragma omp parallel for schedule(dynamic)
    for (int64_t ci = 0; ci < n_chunks; ++ci) {
        ChunkSums& out = partial[static_cast<size_t>(ci)];
        const int64_t lo = ci * kChunk;
        const int64_t hi = std::min(lo + kChunk, n);
        std::vector<double> dist(static_cast<size_t>(c));
        std::vector<double> fade(static_cast<size_t>(c));
        for (int64_t t = lo; t < hi; ++t) {
            Rng rng = trial_rng(options.rng_seed, static_cast<uint64_t>(t));
            double interference = 0.0;
            bool accept = true;
            if (which == LaplaceWhich::Inter) {
                const Point center{0.5 * params.region_side, 0.5 * params.region_side};
                Point rep = center;
                std::vector<Point> parents;
                if (options.representative == RepresentativeRule::PalmCenter) {
                    parents = sample_parents(params, options, rng, 0);
                } else {
                    do {
                        parents = sample_parents(params, options, rng,
                                                 options.fixed_cluster_count ? 1 : 0);
                    } while (parents.empty());
                    size_t best = 0;
                    double best_d = std::numeric_limits<double>::infinity();
                    for (size_t i = 0; i < parents.size(); ++i) {
                        const double d = distance(parents[i], center, params.region_side,
                                                  options.wraparound);
                        if (d < best_d) {
                            best_d = d;
                            best = i;
                        }
                    }
                    rep = parents[best];
                    parents.erase(parents.begin() + static_cast<std::ptrdiff_t>(best));
                }
                for (const Point& parent : parents) {
                    for (int k = 0; k < c; ++k) {
                        double dx, dy;
                        rng.disk_point(params.cluster_radius, dx, dy);
                        const Point pos{parent.x + dx, parent.y + dy};
                        const double d = distance(pos, rep, params.region_side, options.wraparound);
                        interference += pu * rng.exponential() * inv_pow(d, alpha);
                    }
                }
            } else {
                for (int k = 0; k < c; ++k) {
                    double dx, dy;
                    rng.disk_point(params.cluster_radius, dx, dy);
                    dist[static_cast<size_t>(k)] = std::sqrt(dx * dx + dy * dy);
                }
                for (int k = 0; k < c; ++k) fade[static_cast<size_t>(k)] = rng.exponential();
                std::vector<double> sorted = dist;
                std::sort(sorted.begin(), sorted.end());
                const double r_m = sorted[static_cast<size_t>(rank - 1)];
                if (r_m < r_bin_lo || r_m > r_bin_hi) {
                    accept = false;
                } else {
                    // Interference from users beyond rank; fading paired by
                    // distance order.
                    std::vector<int> order(static_cast<size_t>(c));
                    std::iota(order.begin(), order.end(), 0);
                    std::stable_sort(order.begin(), order.end(), [&dist](int a, int b) {
                        return dist[static_cast<size_t>(a)] < dist[static_cast<size_t>(b)];
                    });
                    for (int j = rank; j < c; ++j) {
                        const int u = order[static_cast<size_t>(j)];
                        interference += pu * fade[static_cast<size_t>(u)] *
                                        inv_pow(dist[static_cast<size_t>(u)], alpha);
                    }
                }
            }
            if (!accept) continue;
            ++out.accepted;
            for (size_t i = 0; i < ns; ++i) {
                const double v = std::exp(-s_grid[i] * interference);
                out.sum[i] += v;
                out.sum2[i] += v * v;
            }
        }
    }

    std::vector<double> sum(ns, 0.0), sum2(ns, 0.0);
    int64_t accepted = 0;
    for (const auto& p : partial) {
        for (size_t i = 0; i < ns; ++i) {
            sum[i] += p.sum[i];
            sum2[i] += p.sum2[i];
        }
        accepted += p.accepted;
    }

    std::vector<LaplaceFunctionalPoint> points(ns);
    for (size_t i = 0; i < ns; ++i) {
        points[i].s = s_grid[i];
        points[i].n_samples = accepted;
        if (accepted > 1) {
            const double mean = sum[i] / static_cast<double>(accepted);
            const double var =
                std::max(sum2[i] / static_cast<double>(accepted) - mean * mean, 0.0);
            points[i].estimate = mean;
            points[i].half_width_95 = 1.96 * std::sqrt(var / static_cast<double>(accepted));
        }
    }
    return points;
}

}  // namespace nomasim
