#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "archliq/arch_sim.hpp"
#include "archliq/liquidity.hpp"

namespace archliq {

/// One Monte Carlo experiment. Loaded from a flat key = value file:
///
///   # comment
///   alpha0 = 1
///   alpha1 = 0.1
///   l1 = 0.5
///   liquidity = fgn:H=0.3333333333333333
///   noise = gaussian
///   sample_sizes = 100, 1000, 10000
///   replications = 1000
///   lag = 1
///   master_seed = 20240501
///   init_x_squared = 1.7
///   burn_in = 0
///   output_dir = out
///   threads = 0          # 0 = hardware concurrency
///   hist_bins = 30
struct ExperimentConfig {
    ModelParams params;
    LiquidityModel liquidity = LiquidityModel(FgnSquared{1.0 / 3.0});
    std::string noise_name = "gaussian";
    NoiseMoments noise = NoiseMoments::gaussian();
    std::vector<std::size_t> sample_sizes = {100, 1000, 10000, 100000};
    std::size_t replications = 1000;
    long lag = 1;
    std::uint64_t master_seed = 1;
    double init_x_squared = 1.7;
    std::size_t burn_in = 0;
    std::string output_dir = ".";
    unsigned threads = 0;
    std::size_t hist_bins = 30;

    /// Throws ConfigError.
    void validate() const;
};

/// Sets one key; throws ConfigError for unknown keys or malformed values.
void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

std::vector<std::string> config_keys();

}  // namespace archliq
