#include "nomasim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nomasim {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

bool parse_bool(const std::string& value, const std::string& key) {
    const std::string v = lower(value);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw std::invalid_argument("spec: boolean expected for '" + key + "', got '" + value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("spec: number expected for '" + key + "', got '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string tok;
    while (in >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        out.push_back(parse_double(tok, key));
    }
    return out;
}

SicMode parse_mode(const std::string& tok) {
    const std::string v = lower(tok);
    if (v == "perfect") return SicMode::PerfectSic;
    if (v == "imperfect") return SicMode::ImperfectSic;
    if (v == "worst") return SicMode::WorstCaseSic;
    if (v == "oma") return SicMode::Oma;
    throw std::invalid_argument("spec: unknown mode '" + tok + "'");
}

Engine parse_engine(const std::string& tok) {
    const std::string v = lower(tok);
    if (v == "analytic") return Engine::Analytic;
    if (v == "montecarlo") return Engine::MonteCarlo;
    if (v == "ppp_baseline") return Engine::PppBaseline;
    throw std::invalid_argument("spec: unknown engine '" + tok + "'");
}

SweepAxis parse_axis(const std::string& tok) {
    const std::string v = lower(tok);
    if (v == "cluster_radius") return SweepAxis::ClusterRadius;
    if (v == "bs_intensity") return SweepAxis::BsIntensity;
    if (v == "users_per_cluster") return SweepAxis::UsersPerCluster;
    if (v == "rate_target") return SweepAxis::RateTarget;
    throw std::invalid_argument("spec: unknown sweep_axis '" + tok + "'");
}

int mode_order(SicMode m) { return static_cast<int>(m); }
int engine_order(Engine e) { return static_cast<int>(e); }

std::string format_double(double v, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

NetworkParams params_at(const ExperimentSpec& spec, double value) {
    NetworkParams p = spec.base;
    switch (spec.axis) {
        case SweepAxis::ClusterRadius:
            p.cluster_radius = value;
            break;
        case SweepAxis::BsIntensity:
            // Sweep values are mean cluster counts per window.
            p.bs_intensity = value / (p.region_side * p.region_side);
            break;
        case SweepAxis::UsersPerCluster:
            p.users_per_cluster = static_cast<int>(std::llround(value));
            break;
        case SweepAxis::RateTarget:
            p.rate_targets = {value};
            break;
    }
    return p;
}

struct CellResult {
    std::vector<double> per_rank;     // estimate per rank 1..c
    std::vector<double> per_rank_ci;  // half widths (MC engines)
    double mean = 0.0;
    double mean_ci = 0.0;
    bool has_ci = false;
    bool failed = false;
    std::string error_code;
    int64_t runtime_ms = 0;
};

CellResult run_analytic_cell(const ExperimentSpec& spec, const NetworkParams& params,
                             SicMode mode) {
    CellResult cell;
    const int c = params.users_per_cluster;
    cell.per_rank.assign(static_cast<size_t>(c), 0.0);
    cell.per_rank_ci.assign(static_cast<size_t>(c), 0.0);
    const CoverageOptions& cov = spec.coverage;
    const double theta = params.detection_threshold;

    DetectionProfile profile;
    std::vector<double> worst_detect;
    if (mode == SicMode::ImperfectSic) profile = detection_profile_exact(params, theta, cov);
    if (mode == SicMode::WorstCaseSic) {
        worst_detect.assign(static_cast<size_t>(c), 1.0);
        double chain = 1.0;
        for (int m = 1; m <= c; ++m) {
            worst_detect[static_cast<size_t>(m - 1)] = chain;
            if (m < c) chain *= coverage_perfect(m, theta, params, cov);
        }
    }

    std::vector<std::string> errors(static_cast<size_t>(c));
#pragma omp parallel for schedule(dynamic)
    for (int m = 1; m <= c; ++m) {
        try {
            double v = 0.0;
            switch (mode) {
                case SicMode::PerfectSic:
                    v = coverage_perfect(m, params.sinr_target_for_rank(m), params, cov);
                    break;
                case SicMode::ImperfectSic:
                    v = coverage_imperfect_with_profile(m, params.sinr_target_for_rank(m), profile,
                                                        params, cov);
                    break;
                case SicMode::WorstCaseSic:
                    v = worst_detect[static_cast<size_t>(m - 1)] *
                        coverage_perfect(m, params.sinr_target_for_rank(m), params, cov);
                    break;
                case SicMode::Oma:
                    v = coverage_oma(m, params.rate_targets.front(), params, cov);
                    break;
            }
            cell.per_rank[static_cast<size_t>(m - 1)] = v;
        } catch (const std::exception& e) {
            errors[static_cast<size_t>(m - 1)] = e.what();
        }
    }
    for (const auto& err : errors) {
        if (!err.empty()) {
            cell.failed = true;
            cell.error_code = "numerical_failure: " + err;
            return cell;
        }
    }
    double total = 0.0;
    for (double v : cell.per_rank) total += v;
    cell.mean = total / c;
    return cell;
}

CellResult run_mc_cell(const ExperimentSpec& spec, const NetworkParams& params, SicMode mode,
                       Engine engine, uint64_t seed) {
    CellResult cell;
    SimOptions sim = spec.sim;
    sim.rng_seed = seed;
    sim.baseline = engine == Engine::PppBaseline ? Baseline::PppUsers : Baseline::Mcp;
    const SimulationSummary summary = engine == Engine::PppBaseline
                                          ? estimate_ppp_baseline(params, mode, sim)
                                          : estimate_coverage(params, mode, sim);
    const int c = params.users_per_cluster;
    cell.per_rank.assign(static_cast<size_t>(c), std::nan(""));
    cell.per_rank_ci.assign(static_cast<size_t>(c), 0.0);
    cell.has_ci = true;
    for (int m = 0; m < c && m < static_cast<int>(summary.per_rank.size()); ++m) {
        cell.per_rank[static_cast<size_t>(m)] = summary.per_rank[static_cast<size_t>(m)].estimate;
        cell.per_rank_ci[static_cast<size_t>(m)] =
            summary.per_rank[static_cast<size_t>(m)].half_width_95;
    }
    cell.mean = summary.mean_cluster.estimate;
    cell.mean_ci = summary.mean_cluster.half_width_95;
    if (summary.undefined) {
        cell.failed = true;
        cell.error_code = "undefined_estimate: no rank realized any sample";
    }
    return cell;
}

}  // namespace

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::ClusterRadius: return "cluster_radius";
        case SweepAxis::BsIntensity: return "bs_intensity";
        case SweepAxis::UsersPerCluster: return "users_per_cluster";
        case SweepAxis::RateTarget: return "rate_target";
    }
    return "?";
}

const char* to_string(Engine engine) {
    switch (engine) {
        case Engine::Analytic: return "analytic";
        case Engine::MonteCarlo: return "montecarlo";
        case Engine::PppBaseline: return "ppp_baseline";
    }
    return "?";
}

ExperimentSpec parse_spec_text(const std::string& text) {
    ExperimentSpec spec;
    spec.modes.clear();
    spec.engines.clear();
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("spec: line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("spec: line " + std::to_string(line_no) +
                                        " has an empty key or value");

        if (key == "bs_intensity") {
            spec.base.bs_intensity = parse_double(value, key);
        } else if (key == "bs_count_mean") {
            spec.base.bs_intensity =
                parse_double(value, key) / (spec.base.region_side * spec.base.region_side);
        } else if (key == "users_per_cluster") {
            spec.base.users_per_cluster = static_cast<int>(parse_double(value, key));
        } else if (key == "cluster_radius") {
            spec.base.cluster_radius = parse_double(value, key);
        } else if (key == "pathloss_exponent") {
            spec.base.pathloss_exponent = parse_double(value, key);
        } else if (key == "tx_power") {
            spec.base.tx_power = parse_double(value, key);
        } else if (key == "noise_power") {
            spec.base.noise_power = parse_double(value, key);
        } else if (key == "detection_threshold") {
            spec.base.detection_threshold = parse_double(value, key);
        } else if (key == "rate_target") {
            spec.base.rate_targets = {parse_double(value, key)};
        } else if (key == "rate_targets") {
            spec.base.rate_targets = parse_list(value, key);
        } else if (key == "region_side") {
            spec.base.region_side = parse_double(value, key);
        } else if (key == "sweep_axis") {
            spec.axis = parse_axis(value);
        } else if (key == "sweep_values") {
            spec.sweep_values = parse_list(value, key);
        } else if (key == "modes") {
            std::istringstream ms(value);
            std::string tok;
            while (ms >> tok) spec.modes.push_back(parse_mode(tok));
        } else if (key == "engines") {
            std::istringstream es(value);
            std::string tok;
            while (es >> tok) spec.engines.push_back(parse_engine(tok));
        } else if (key == "trials") {
            spec.sim.n_trials = static_cast<int64_t>(parse_double(value, key));
        } else if (key == "seed") {
            spec.sim.rng_seed = static_cast<uint64_t>(parse_double(value, key));
        } else if (key == "wraparound") {
            spec.sim.wraparound = parse_bool(value, key);
        } else if (key == "ranking") {
            const std::string v = lower(value);
            if (v == "by_distance") spec.sim.ranking_rule = RankingRule::ByDistance;
            else if (v == "by_received_power") spec.sim.ranking_rule = RankingRule::ByReceivedPower;
            else throw std::invalid_argument("spec: unknown ranking '" + value + "'");
        } else if (key == "representative") {
            const std::string v = lower(value);
            if (v == "nearest_center") spec.sim.representative = RepresentativeRule::NearestCenter;
            else if (v == "palm_center") spec.sim.representative = RepresentativeRule::PalmCenter;
            else throw std::invalid_argument("spec: unknown representative '" + value + "'");
        } else if (key == "fixed_cluster_count") {
            spec.sim.fixed_cluster_count = parse_bool(value, key);
        } else if (key == "use_inter_bound") {
            spec.coverage.use_inter_bound = parse_bool(value, key);
        } else if (key == "interference_limited") {
            spec.coverage.interference_limited = parse_bool(value, key);
        } else if (key == "quad_abs_tol") {
            spec.coverage.quad.abs_tol = parse_double(value, key);
        } else if (key == "quad_rel_tol") {
            spec.coverage.quad.rel_tol = parse_double(value, key);
        } else if (key == "quad_max_subdivisions") {
            spec.coverage.quad.max_subdivisions = static_cast<int>(parse_double(value, key));
        } else if (key == "tail_cutoff_multiplier") {
            spec.coverage.quad.tail_cutoff_multiplier = parse_double(value, key);
        } else if (key == "output") {
            spec.output_path = value;
        } else {
            throw std::invalid_argument("spec: unknown key '" + key + "'");
        }
    }
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

std::vector<std::string> validate_spec(const ExperimentSpec& spec) {
    std::vector<std::string> errors = spec.base.validation_errors();
    if (spec.sweep_values.empty()) errors.push_back("sweep_values must be nonempty");
    if (spec.modes.empty()) errors.push_back("at least one mode is required");
    if (spec.engines.empty()) errors.push_back("at least one engine is required");
    if (spec.sim.n_trials < 1) errors.push_back("trials must be >= 1");
    const bool has_mc_engine =
        std::find(spec.engines.begin(), spec.engines.end(), Engine::MonteCarlo) !=
            spec.engines.end() ||
        std::find(spec.engines.begin(), spec.engines.end(), Engine::PppBaseline) !=
            spec.engines.end();
    if (has_mc_engine && spec.sim.n_trials < 100)
        errors.push_back("trials must be >= 100 for Monte-Carlo engines");
    if (!(spec.coverage.quad.abs_tol > 0.0)) errors.push_back("quad_abs_tol must be > 0");
    if (!(spec.coverage.quad.rel_tol > 0.0)) errors.push_back("quad_rel_tol must be > 0");
    if (spec.coverage.quad.max_subdivisions < 1)
        errors.push_back("quad_max_subdivisions must be >= 1");
    if (!(spec.coverage.quad.tail_cutoff_multiplier > 1.0))
        errors.push_back("tail_cutoff_multiplier must be > 1");
    for (double v : spec.sweep_values) {
        NetworkParams p = params_at(spec, v);
        for (const auto& e : p.validation_errors())
            errors.push_back("sweep value " + format_double(v) + ": " + e);
        if (spec.axis == SweepAxis::UsersPerCluster && std::fabs(v - std::llround(v)) > 1e-9)
            errors.push_back("sweep value " + format_double(v) +
                             ": users_per_cluster must be an integer");
    }
    if (spec.output_path.empty()) errors.push_back("output path must be nonempty");
    std::sort(errors.begin(), errors.end());
    errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
    return errors;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    {
        const auto errors = validate_spec(spec);
        if (!errors.empty()) {
            std::ostringstream msg;
            msg << "invalid experiment spec:";
            for (const auto& e : errors) msg << "\n  - " << e;
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<SicMode> modes = spec.modes;
    std::sort(modes.begin(), modes.end(),
              [](SicMode a, SicMode b) { return mode_order(a) < mode_order(b); });
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<Engine> engines = spec.engines;
    std::sort(engines.begin(), engines.end(),
              [](Engine a, Engine b) { return engine_order(a) < engine_order(b); });
    engines.erase(std::unique(engines.begin(), engines.end()), engines.end());

    std::vector<ResultRow> rows;
    for (size_t vi = 0; vi < spec.sweep_values.size(); ++vi) {
        const double value = spec.sweep_values[vi];
        const NetworkParams params = params_at(spec, value);
        const int c = params.users_per_cluster;
        for (SicMode mode : modes) {
            for (Engine engine : engines) {
                // Stream seed decoupled per cell so estimates do not shift when
                // the mode/engine selection changes.
                uint64_t sm = spec.sim.rng_seed ^ (0x51d0f1f3a2b4c5d6ULL + vi * 1315423911ULL +
                                                   static_cast<uint64_t>(mode_order(mode)) * 2654435761ULL +
                                                   static_cast<uint64_t>(engine_order(engine)) * 97531ULL);
                const uint64_t cell_seed = splitmix64(sm);
                const auto start = std::chrono::steady_clock::now();
                CellResult cell;
                try {
                    cell = engine == Engine::Analytic
                               ? run_analytic_cell(spec, params, mode)
                               : run_mc_cell(spec, params, mode, engine, cell_seed);
                } catch (const std::exception& e) {
                    cell.failed = true;
                    cell.error_code = std::string("engine_failure: ") + e.what();
                    cell.per_rank.assign(static_cast<size_t>(c), std::nan(""));
                }
                const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - start)
                                         .count();

                for (int rank = 1; rank <= c + 1; ++rank) {
                    ResultRow row;
                    row.sweep_value = value;
                    row.engine = engine;
                    row.mode = mode;
                    row.rank = rank <= c ? rank : 0;
                    row.failed = cell.failed;
                    row.error_code = cell.error_code;
                    row.runtime_ms = elapsed;
                    row.has_ci = cell.has_ci && !cell.failed;
                    if (!cell.failed) {
                        if (rank <= c) {
                            row.estimate = cell.per_rank[static_cast<size_t>(rank - 1)];
                            row.ci95 = cell.has_ci ? cell.per_rank_ci[static_cast<size_t>(rank - 1)] : 0.0;
                        } else {
                            row.estimate = cell.mean;
                            row.ci95 = cell.mean_ci;
                        }
                    } else {
                        row.estimate = std::nan("");
                    }
                    rows.push_back(row);
                }
            }
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        if (mode_order(a.mode) != mode_order(b.mode)) return mode_order(a.mode) < mode_order(b.mode);
        const int ra = a.rank == 0 ? 1 << 20 : a.rank;
        const int rb = b.rank == 0 ? 1 << 20 : b.rank;
        if (ra != rb) return ra < rb;
        return engine_order(a.engine) < engine_order(b.engine);
    });
    return rows;
}

std::string format_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "sweep_axis,sweep_value,engine,mode,rank,estimate,ci95,runtime_ms\n";
    for (const auto& row : rows) {
        out << to_string(spec.axis) << ',' << format_double(row.sweep_value) << ','
            << to_string(row.engine) << ',' << to_string(row.mode) << ',';
        if (row.rank == 0) out << "mean";
        else out << row.rank;
        out << ',';
        if (row.failed || std::isnan(row.estimate)) out << "nan";
        else out << format_double(row.estimate);
        out << ',';
        if (row.has_ci) out << format_double(row.ci95, "%.6g");
        // runtime pinned to keep identical spec+seed runs byte identical; the
        // sidecar carries the measured value.
        out << ",0\n";
    }
    return out.str();
}

void write_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    out << format_csv(spec, rows);
}

std::string format_metadata_json(const ExperimentSpec& spec, const std::vector<ResultRow>& rows) {
    json meta;
    meta["tool"] = "nomasim";
    meta["version"] = "1.0.0";
    meta["seed"] = spec.sim.rng_seed;
    meta["trials"] = spec.sim.n_trials;
    meta["sweep_axis"] = to_string(spec.axis);
    meta["sweep_values"] = spec.sweep_values;
    json modes = json::array();
    for (SicMode m : spec.modes) modes.push_back(to_string(m));
    meta["modes"] = modes;
    json engines = json::array();
    for (Engine e : spec.engines) engines.push_back(to_string(e));
    meta["engines"] = engines;
    meta["params"] = {
        {"bs_intensity", spec.base.bs_intensity},
        {"users_per_cluster", spec.base.users_per_cluster},
        {"cluster_radius", spec.base.cluster_radius},
        {"pathloss_exponent", spec.base.pathloss_exponent},
        {"tx_power", spec.base.tx_power},
        {"noise_power", spec.base.noise_power},
        {"detection_threshold", spec.base.detection_threshold},
        {"rate_targets", spec.base.rate_targets},
        {"region_side", spec.base.region_side},
    };
    meta["sim"] = {
        {"wraparound", spec.sim.wraparound},
        {"ranking", spec.sim.ranking_rule == RankingRule::ByDistance ? "by_distance"
                                                                     : "by_received_power"},
        {"representative", spec.sim.representative == RepresentativeRule::NearestCenter
                               ? "nearest_center"
                               : "palm_center"},
        {"fixed_cluster_count", spec.sim.fixed_cluster_count},
    };
    meta["quadrature"] = {
        {"abs_tol", spec.coverage.quad.abs_tol},
        {"rel_tol", spec.coverage.quad.rel_tol},
        {"max_subdivisions", spec.coverage.quad.max_subdivisions},
        {"tail_cutoff_multiplier", spec.coverage.quad.tail_cutoff_multiplier},
        {"use_inter_bound", spec.coverage.use_inter_bound},
        {"interference_limited", spec.coverage.interference_limited},
    };
    json jrows = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        json jr = {
            {"index", i},
            {"sweep_value", row.sweep_value},
            {"engine", to_string(row.engine)},
            {"mode", to_string(row.mode)},
            {"rank", row.rank == 0 ? json("mean") : json(row.rank)},
            {"runtime_ms", row.runtime_ms},
        };
        if (row.failed) jr["error"] = row.error_code;
        jrows.push_back(jr);
    }
    meta["rows"] = jrows;
    return meta.dump(2) + "\n";
}

void write_metadata_json(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write metadata: " + path);
    out << format_metadata_json(spec, rows);
}

}  // namespace nomasim
