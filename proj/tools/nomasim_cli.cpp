#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nomasim/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int cmd_validate(const std::string& path) {
    nomasim::ExperimentSpec spec;
    try {
        spec = nomasim::parse_spec_file(path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    }
    const auto errors = nomasim::validate_spec(spec);
    if (!errors.empty()) {
        std::cerr << "invalid spec (" << errors.size() << " problem(s)):\n";
        for (const auto& e : errors) std::cerr << "  - " << e << "\n";
        return kExitValidation;
    }
    std::cout << "ok: " << path << " validates (" << spec.sweep_values.size()
              << " sweep values, " << spec.modes.size() << " mode(s), " << spec.engines.size()
              << " engine(s))\n";
    return kExitOk;
}

int cmd_run(const std::string& path, const std::vector<std::string>& mode_flags,
            const std::vector<std::string>& engine_flags, long long seed, long long trials,
            const std::string& out_override, bool has_seed, bool has_trials) {
    nomasim::ExperimentSpec spec;
    try {
        spec = nomasim::parse_spec_file(path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    }

    // Precedence: flags > file > defaults.
    try {
        if (!mode_flags.empty()) {
            std::string joined;
            for (const auto& m : mode_flags) joined += m + " ";
            nomasim::ExperimentSpec tmp = nomasim::parse_spec_text("modes = " + joined + "\n");
            spec.modes = tmp.modes;
        }
        if (!engine_flags.empty()) {
            std::string joined;
            for (const auto& e : engine_flags) joined += e + " ";
            nomasim::ExperimentSpec tmp = nomasim::parse_spec_text("engines = " + joined + "\n");
            spec.engines = tmp.engines;
        }
    } catch (const std::exception& e) {
        std::cerr << "flag error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (has_seed) spec.sim.rng_seed = static_cast<uint64_t>(seed);
    if (has_trials) spec.sim.n_trials = trials;
    if (!out_override.empty()) spec.output_path = out_override;

    const auto errors = nomasim::validate_spec(spec);
    if (!errors.empty()) {
        std::cerr << "invalid spec (" << errors.size() << " problem(s)):\n";
        for (const auto& e : errors) std::cerr << "  - " << e << "\n";
        return kExitValidation;
    }

    std::vector<nomasim::ResultRow> rows;
    try {
        rows = nomasim::run_experiment(spec);
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return kExitNumerical;
    }
    try {
        nomasim::write_csv(spec, rows, spec.output_path);
        nomasim::write_metadata_json(spec, rows, spec.output_path + ".meta.json");
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitNumerical;
    }

    int failed_rows = 0;
    for (const auto& row : rows) failed_rows += row.failed ? 1 : 0;
    std::cout << "wrote " << rows.size() << " rows to " << spec.output_path << " (sidecar "
              << spec.output_path << ".meta.json)\n";
    if (failed_rows > 0) {
        std::cerr << failed_rows << " row(s) carry a numerical error code; see the sidecar\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate-coverage evaluation for uplink NOMA in clustered cellular networks"};
    app.require_subcommand(1);

    std::string spec_path;
    std::vector<std::string> mode_flags;
    std::vector<std::string> engine_flags;
    long long seed = 0;
    long long trials = 0;
    std::string out_override;

    auto* run = app.add_subcommand("run", "Run an experiment spec and write CSV results");
    run->add_option("spec", spec_path, "experiment spec file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the RNG seed");
    auto* trials_opt = run->add_option("--trials", trials, "override the Monte-Carlo trial count");
    run->add_option("--out", out_override, "override the output CSV path");
    run->add_option("--engine", engine_flags, "override the engine list");
    run->add_option("--mode", mode_flags, "override the mode list");

    auto* validate = app.add_subcommand("validate", "Validate an experiment spec");
    validate->add_option("spec", spec_path, "experiment spec file")->required();

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Print a bundled experiment preset");
    preset->add_option("name", preset_name, "preset name (fig3..fig8)")->required();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(validate)) return cmd_validate(spec_path);
    if (app.got_subcommand(preset)) {
        try {
            std::cout << nomasim::preset_text(preset_name);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitValidation;
        }
        return kExitOk;
    }
    return cmd_run(spec_path, mode_flags, engine_flags, seed, trials, out_override,
                   seed_opt->count() > 0, trials_opt->count() > 0);
}
