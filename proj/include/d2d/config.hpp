#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "d2d/analysis.hpp"
#include "d2d/montecarlo.hpp"
#include "d2d/optimizer.hpp"

namespace d2d {

struct SweepSpec {
    std::string variable = "r";  // r, theta, sigma, beta, l
    double lo = 0.1;
    double hi = 3.0;
    int steps = 60;

    std::vector<double> grid() const;
};

struct ExperimentConfig {
    Model model;
    Distances distances{0.025, 0.02, 0.03, 0.15, 0.16, 0.05, 0.1, 0.45};
    SimConfig sim;
    GDConfig gd;
    double grid_lo = 0.05;
    double grid_hi = 3.0;
    int grid_steps = 200;
    SweepSpec sweep;
    std::optional<std::array<double, 3>> mode_select_losses;  // dB, hypothesis order
    long mc_trials = 1000000;
    bool per_channel_use = false;
    std::uint64_t seed = 1;
    int threads = 0;
    bool strict = false;

    // section.key -> value, canonical order, after defaults, file, env and overrides
    std::vector<std::pair<std::string, std::string>> resolved;
    std::string source = "<defaults>";

    std::uint64_t detection_seed() const;
};

// Environment overrides: D2D_EFFCAP_<SECTION>_<KEY>, e.g. D2D_EFFCAP_SYSTEM_RATE=1.5.
inline constexpr const char* env_prefix = "D2D_EFFCAP_";

ExperimentConfig default_config();
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<string>", bool use_env = true);
ExperimentConfig load_config(const std::string& path, bool use_env = true);

// Sets one key ("section.key") and re-resolves derived fields; throws ConfigError.
void set_option(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value);

// Documented key list: (section.key, default, description).
struct OptionDoc {
    std::string key;
    std::string default_value;
    std::string description;
};
std::vector<OptionDoc> option_docs();

// "# section.key = value" lines echoing the resolved configuration.
std::string config_echo(const ExperimentConfig& cfg);

}  // namespace d2d
