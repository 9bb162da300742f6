#pragma once

#include <string>
#include <vector>

#include "nomasim/coverage.hpp"
#include "nomasim/montecarlo.hpp"
#include "nomasim/params.hpp"

namespace nomasim {

enum class SweepAxis { ClusterRadius, BsIntensity, UsersPerCluster, RateTarget };
enum class Engine { Analytic, MonteCarlo, PppBaseline };

const char* to_string(SweepAxis axis);
const char* to_string(Engine engine);

// Declarative experiment: a base parameter set, one sweep axis, and the
// mode/engine matrix to evaluate at every sweep value. BsIntensity sweep
// values are mean cluster counts per window (lambda * |A|).
struct ExperimentSpec {
    NetworkParams base;
    SweepAxis axis = SweepAxis::ClusterRadius;
    std::vector<double> sweep_values;
    std::vector<SicMode> modes;
    std::vector<Engine> engines;
    SimOptions sim;
    CoverageOptions coverage;
    std::string output_path = "results.csv";
};

// Parses the key = value experiment format ('#' comments, lists whitespace
// separated). Throws std::invalid_argument on malformed input.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec_file(const std::string& path);

// Exhaustive field checks; returns every violation (empty = valid).
std::vector<std::string> validate_spec(const ExperimentSpec& spec);

struct ResultRow {
    double sweep_value = 0.0;
    Engine engine = Engine::Analytic;
    SicMode mode = SicMode::PerfectSic;
    int rank = 0;  // 0 = cluster mean
    double estimate = 0.0;
    double ci95 = 0.0;
    bool has_ci = false;
    bool failed = false;
    std::string error_code;
    int64_t runtime_ms = 0;  // measured wall time, reported in the sidecar
};

// Runs every (sweep value, engine, mode) cell; a numerical failure marks the
// affected rows and the run continues. Row order is deterministic.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// CSV with the stable column set; ci95 empty for analytic rows and the
// runtime_ms column pinned to 0 so identical spec+seed runs are byte
// identical (measured timings live in the sidecar).
std::string format_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows);
void write_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
               const std::string& path);

// JSON sidecar: seed, tolerances, options, measured per-row timings, errors.
std::string format_metadata_json(const ExperimentSpec& spec, const std::vector<ResultRow>& rows);
void write_metadata_json(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                         const std::string& path);

// Embedded sweep presets mirroring the study's figure configurations.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);  // throws on unknown name

}  // namespace nomasim
