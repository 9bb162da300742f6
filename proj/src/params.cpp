#include "nomasim/params.hpp"

#include <sstream>
#include <stdexcept>

namespace nomasim {

const char* to_string(SicMode mode) {
    switch (mode) {
        case SicMode::PerfectSic: return "perfect";
        case SicMode::ImperfectSic: return "imperfect";
        case SicMode::WorstCaseSic: return "worst";
        case SicMode::Oma: return "oma";
    }
    return "?";
}

double NetworkParams::rate_target_for_rank(int m) const {
    if (rate_targets.empty()) throw std::invalid_argument("rate_targets is empty");
    if (rate_targets.size() == 1) return rate_targets.front();
    if (m < 1 || m > static_cast<int>(rate_targets.size()))
        throw std::invalid_argument("rank outside rate_targets");
    return rate_targets[static_cast<size_t>(m - 1)];
}

double NetworkParams::sinr_target_for_rank(int m) const {
    return std::exp2(rate_target_for_rank(m)) - 1.0;
}

double NetworkParams::oma_sinr_target() const {
    if (rate_targets.empty()) throw std::invalid_argument("rate_targets is empty");
    return std::exp2(rate_targets.front() * users_per_cluster) - 1.0;
}

std::vector<std::string> NetworkParams::validation_errors() const {
    std::vector<std::string> errors;
    if (!(bs_intensity > 0.0)) errors.push_back("bs_intensity must be > 0");
    if (users_per_cluster < 1) errors.push_back("users_per_cluster must be >= 1");
    if (!(cluster_radius > 0.0)) errors.push_back("cluster_radius must be > 0");
    if (!(pathloss_exponent > 2.0)) errors.push_back("pathloss_exponent > 2 required");
    if (!(tx_power > 0.0)) errors.push_back("tx_power must be > 0");
    if (noise_power < 0.0) errors.push_back("noise_power must be >= 0");
    if (!(detection_threshold > 0.0)) errors.push_back("detection_threshold must be > 0");
    if (rate_targets.empty()) errors.push_back("rate_targets must be nonempty");
    for (double r : rate_targets)
        if (!(r > 0.0)) { errors.push_back("all rate targets must be > 0"); break; }
    if (rate_targets.size() > 1 &&
        rate_targets.size() != static_cast<size_t>(users_per_cluster))
        errors.push_back("rate_targets must have 1 or users_per_cluster entries");
    if (!(region_side > 0.0)) errors.push_back("region_side must be > 0");
    return errors;
}

void NetworkParams::validate() const {
    auto errors = validation_errors();
    if (errors.empty()) return;
    std::ostringstream msg;
    msg << "invalid NetworkParams:";
    for (const auto& e : errors) msg << "\n  - " << e;
    throw std::invalid_argument(msg.str());
}

}  // namespace nomasim
