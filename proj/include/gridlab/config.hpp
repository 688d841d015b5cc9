#pragma once

/**
 * @file config.hpp
 * @brief Experiment configuration and its INI-style text form.
 *
 * Example:
 *
 *   [problem]
 *   kind = oscillator        ; decay | oscillator | laplace | poisson
 *   [sampling]
 *   strategies = sine_based, chebyshev
 *   grid_sizes = 400
 *   [network]
 *   architectures = 100, 50x50
 *   [training]
 *   seeds = 0..199
 *
 * Every key is optional; unknown sections or keys are errors.
 */

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/network.hpp"
#include "gridlab/problems.hpp"
#include "gridlab/sampler.hpp"

namespace gridlab {

struct ExperimentConfig {
  ProblemSpec problem = make_problem(ProblemKind::oscillator);
  std::vector<Strategy> strategies = all_strategies();
  std::vector<int> grid_sizes{100, 200, 400};
  std::vector<NetLayout> architectures{{1, {100}}, {1, {50, 50}}};
  std::vector<std::uint64_t> seeds{42};
  long epochs = 100000;
  int boundary_per_edge = 0;
  int log_every = 100;
  std::string output_dir = "out";

  /// Throws ConfigError on empty lists or non-positive sizes.
  void validate() const;
  std::size_t run_count() const {
    return strategies.size() * grid_sizes.size() * architectures.size() * seeds.size();
  }
};

/// Defaults for a problem: all strategies, its standard grid sizes, 1x100 and 2x50, seed 42.
ExperimentConfig default_experiment(ProblemKind kind);

/// "42", "0..199" (inclusive) or "1, 11, 21".
std::vector<std::uint64_t> parse_seeds(std::string_view text);

ExperimentConfig parse_config(std::string_view text);
/// Throws IoError if the file cannot be read, ConfigError if it is invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gridlab
