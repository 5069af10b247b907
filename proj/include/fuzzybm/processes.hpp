#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/geometry.hpp"

namespace fuzzybm {

// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
// Seed of replicate `index` under base seed `base`. Independent of how
// replicates are spread over workers.
std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t index);

// 0, 0.25, ..., 2.
std::vector<double> default_horizon();

struct WienerPath {
  std::vector<double> times;
  std::vector<Point> points;
};

// Increments over [s, t] are N(0, sigma2 (t - s) I). Times must start at 0 and
// be strictly ascending.
WienerPath sample_wiener_path(const std::vector<double>& times, int dim, double sigma2,
                              std::uint64_t seed);

struct FuzzyProcessPath {
  std::vector<double> times;
  std::vector<FuzzySet> values;

  // Exact time lookup; off-grid times throw.
  std::size_t index_of(double t) const;
  const FuzzySet& value_at(double t) const { return values[index_of(t)]; }
};

// B_t = 1_{b_t}.
FuzzyProcessPath fuzzy_brownian(const WienerPath& path, GridPtr grid, const AlphaGrid& alpha_grid);

struct GaussianFuzzyLaw {
  FuzzySet mean;
  Eigen::MatrixXd covariance;

  GaussianFuzzyLaw(FuzzySet mean, Eigen::MatrixXd covariance);
};

// mean + 1_xi with xi ~ N(0, covariance).
FuzzySet sample_gaussian_frv(const GaussianFuzzyLaw& law, std::uint64_t seed);

enum class ShiftMode {
  // B_{t+t0} + (-1) B_{t0}: the restarted process, B_0 = 1_0.
  increment,
  // B_{t+t0} as written, keeping B_{t0} as the starting value.
  raw,
};

enum class InversionVariant {
  reciprocal,       // t B_{1/t}
  reciprocal_sqrt,  // t B_{1/sqrt(t)}
};

struct Shift {
  double t0 = 0.0;
  ShiftMode mode = ShiftMode::increment;
};
struct Rescale {
  double lambda = 1.0;
};
struct Translate {
  FuzzySet nu;
};
struct TimeInversion {
  InversionVariant variant = InversionVariant::reciprocal;
};

using Transform = std::variant<Shift, Rescale, Translate, TimeInversion>;

std::string describe(const Transform& transform);

// Output times of a transform applied to a path sampled on `times`.
std::vector<double> transformed_times(const std::vector<double>& times, const Transform& transform);

// Deterministic reindexing of a sampled path; no interpolation. Output times
// are derived from the sampled grid, so every output time is an exact hit.
FuzzyProcessPath transform_process(const FuzzyProcessPath& path, const Transform& transform);

struct SampledPath {
  WienerPath driver;
  FuzzyProcessPath path;
};

/// Immutable factory of independent process paths. `sample(seed)` is a pure
/// function of the seed, so one sampler can be shared by concurrent workers.
class ProcessSampler {
 public:
  virtual ~ProcessSampler() = default;

  virtual const std::vector<double>& times() const = 0;
  virtual const GridPtr& grid() const = 0;
  virtual const AlphaGrid& alpha_grid() const = 0;
  virtual SampledPath sample_with_driver(std::uint64_t seed) const = 0;
  virtual std::string describe() const = 0;

  FuzzyProcessPath sample(std::uint64_t seed) const { return sample_with_driver(seed).path; }
  std::size_t time_index(double t) const;
};

using SamplerPtr = std::shared_ptr<const ProcessSampler>;

struct BrownianOptions {
  GridPtr grid;
  AlphaGrid alpha_grid = AlphaGrid::uniform(5);
  std::vector<double> times = default_horizon();
  double sigma2 = 1.0;
};

SamplerPtr brownian_sampler(BrownianOptions options);
SamplerPtr transformed_sampler(SamplerPtr base, Transform transform);
// B_t = 1_0 for every t: degenerate but not Brownian.
SamplerPtr constant_sampler(GridPtr grid, AlphaGrid alpha_grid, std::vector<double> times);

/// Sampler of nu + 1_{b_t}. For nu != 1_0 the mean functional
/// E[phi(s(B_t))] equals phi(s_nu), so the zero-mean characterization fails.
class CounterexampleSampler : public ProcessSampler {
 public:
  CounterexampleSampler(FuzzySet nu, std::uint64_t base_seed, BrownianOptions options);

  const std::vector<double>& times() const override { return inner_->times(); }
  const GridPtr& grid() const override { return inner_->grid(); }
  const AlphaGrid& alpha_grid() const override { return inner_->alpha_grid(); }
  SampledPath sample_with_driver(std::uint64_t seed) const override {
    return inner_->sample_with_driver(seed);
  }
  std::string describe() const override { return inner_->describe(); }

  std::uint64_t base_seed() const { return base_seed_; }
  // Path of the `index`-th replicate under the generator's own base seed.
  SampledPath replicate(std::uint64_t index) const {
    return sample_with_driver(replicate_seed(base_seed_, index));
  }
  const FuzzySet& nu() const { return nu_; }

 private:
  FuzzySet nu_;
  std::uint64_t base_seed_;
  SamplerPtr inner_;
};

std::shared_ptr<const CounterexampleSampler> counterexample_generator(
    FuzzySet nu, std::uint64_t base_seed, std::vector<double> times = default_horizon(),
    double sigma2 = 1.0);

}  // namespace fuzzybm
