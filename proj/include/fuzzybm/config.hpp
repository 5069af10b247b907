#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzybm/io.hpp"
#include "fuzzybm/processes.hpp"

namespace fuzzybm {

// Anything wrong with a config file: syntax, unknown keys, types, or values
// that violate an operation's preconditions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplerSpec {
  // bm | translate | rescale | shift | time_inversion | constant
  std::string kind = "bm";
  // translate only: {"type": "indicator", "point": [...]},
  // {"type": "box", "lo": [...], "hi": [...]} or {"type": "fuzzy_set", "value": <FuzzySet JSON>}.
  Json nu;
  double lambda = 4.0;                   // rescale
  double t0 = 0.5;                       // shift
  std::string shift_mode = "increment";  // shift: increment | raw
  std::string variant = "reciprocal";    // time_inversion: reciprocal | reciprocal_sqrt

  bool operator==(const SamplerSpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  std::string format = "json";  // json | csv

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  int dim = 2;
  std::size_t direction_count = 128;
  std::uint64_t grid_seed = 0;
  std::vector<double> alpha_levels = {1.0, 0.8, 0.6, 0.4, 0.2};
  std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  std::size_t samples = 200000;
  std::uint64_t seed = 20260401;
  double sigma2 = 1.0;
  unsigned workers = 0;
  std::size_t functional_count = 50;
  std::size_t covariance_triples = 25;
  std::size_t cross_pairs = 10;
  double z = 4.0;
  std::size_t detector_atoms = 1000;
  // simulate: number of paths written.
  std::size_t paths = 4;
  SamplerSpec sampler;
  OutputSpec output;
  // report: JSON reports to merge.
  std::vector<std::string> reports;

  bool operator==(const RunConfig&) const = default;
};

Json config_to_json(const RunConfig& config);
// Strict: unknown keys, wrong types and failed validation raise ConfigError.
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

// Throws ConfigError when the config cannot drive every command.
void validate(const RunConfig& config);

GridPtr config_grid(const RunConfig& config);
AlphaGrid config_alpha_grid(const RunConfig& config);
FuzzySet build_nu(const Json& spec, const GridPtr& grid, const AlphaGrid& alpha_grid);

// Base Brownian horizon such that the transformed sampler reaches every
// evaluation time, and the sampler itself.
std::vector<double> base_horizon(const RunConfig& config);
SamplerPtr build_sampler(const RunConfig& config);

// Maps each evaluation time to the sampler time within 1e-9 relative distance.
// Transforms such as 1/sqrt(t) do not reproduce decimal times bitwise.
std::vector<double> snap_times(const ProcessSampler& sampler, const std::vector<double>& times);

}  // namespace fuzzybm
