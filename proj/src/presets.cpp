#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomasim/experiment.hpp"

namespace nomasim {

namespace {

const std::map<std::string, std::string>& preset_map() {
    static const std::map<std::string, std::string> presets = {
        {"fig3",
         "# Mean rate coverage vs cluster radius, sparse deployment\n"
         "bs_count_mean = 2\n"
         "users_per_cluster = 8\n"
         "rate_target = 1.5\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = cluster_radius\n"
         "sweep_values = 0.2 0.4 0.6 0.8 1.0 1.2 1.4\n"
         "modes = perfect imperfect worst oma\n"
         "engines = analytic montecarlo\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig3.csv\n"},
        {"fig4",
         "# Mean rate coverage vs cluster radius, dense deployment\n"
         "bs_count_mean = 8\n"
         "users_per_cluster = 8\n"
         "rate_target = 1.5\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = cluster_radius\n"
         "sweep_values = 0.2 0.4 0.6 0.8 1.0 1.2 1.4\n"
         "modes = perfect imperfect worst oma\n"
         "engines = analytic montecarlo\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig4.csv\n"},
        {"fig5",
         "# Mean rate coverage vs mean cluster count per window\n"
         "users_per_cluster = 8\n"
         "rate_target = 1.5\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = bs_intensity\n"
         "sweep_values = 2 4 8 16\n"
         "modes = perfect imperfect worst oma\n"
         "engines = analytic montecarlo\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig5.csv\n"},
        {"fig6",
         "# Mean rate coverage vs per-user rate target\n"
         "bs_count_mean = 8\n"
         "users_per_cluster = 8\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = rate_target\n"
         "sweep_values = 0.5 1.0 1.5 2.0 2.5 3.0\n"
         "modes = perfect imperfect worst oma\n"
         "engines = analytic montecarlo\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig6.csv\n"},
        {"fig7",
         "# Mean rate coverage vs users per cluster\n"
         "bs_count_mean = 8\n"
         "rate_target = 1.5\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = users_per_cluster\n"
         "sweep_values = 2 4 6 8 10\n"
         "modes = perfect imperfect worst oma\n"
         "engines = analytic montecarlo\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig7.csv\n"},
        {"fig8",
         "# Clustered vs independent-user placement, Monte Carlo only\n"
         "bs_count_mean = 8\n"
         "rate_target = 1.5\n"
         "detection_threshold = 1\n"
         "cluster_radius = 0.8\n"
         "sweep_axis = users_per_cluster\n"
         "sweep_values = 2 4 6 8 10\n"
         "modes = perfect imperfect oma\n"
         "engines = montecarlo ppp_baseline\n"
         "fixed_cluster_count = true\n"
         "trials = 100000\n"
         "seed = 1\n"
         "output = fig8.csv\n"},
    };
    return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : preset_map()) names.push_back(name);
    return names;
}

std::string preset_text(const std::string& name) {
    const auto& presets = preset_map();
    const auto it = presets.find(name);
    if (it == presets.end()) {
        std::string known;
        for (const auto& [n, t] : presets) known += " " + n;
        throw std::invalid_argument("unknown preset '" + name + "'; available:" + known);
    }
    return it->second;
}

}  // namespace nomasim
