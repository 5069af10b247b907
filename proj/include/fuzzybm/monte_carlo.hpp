#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/processes.hpp"

namespace fuzzybm {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Streaming power sums of (x - shift) up to the fourth power.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(double shift = 0.0, int max_moment = 4)
      : shift_(shift), max_moment_(max_moment) {}

  void add(double x);
  // Requires equal shifts; merge order fixes the floating-point result.
  void merge(const MomentAccumulator& other);

  std::size_t count() const { return count_; }
  double mean() const;
  // Unbiased sample variance.
  double variance() const;
  double std_error() const;
  double skewness() const;
  double excess_kurtosis() const;

 private:
  double raw(int p) const;
  double central(int p) const;

  double shift_;
  int max_moment_;
  std::size_t count_ = 0;
  std::array<CompensatedSum, 4> sums_{};
};

struct MonteCarloOptions {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: hardware concurrency
  std::size_t chunk = 512;
  int max_moment = 4;
};

// Fills one value per tracked statistic for a single replicate. `surfaces`
// holds embed(path.values[k]) for every sampler time k.
using ObservationFn = std::function<void(const SampledPath& sample,
                                         const std::vector<SupportSurface>& surfaces,
                                         std::span<double> moment_values,
                                         std::span<double> max_values)>;

struct MonteCarloResult {
  std::vector<MomentAccumulator> moments;
  std::vector<double> maxima;
  std::size_t samples = 0;
};

/// Runs `samples` replicates with seeds replicate_seed(seed, r). Replicates are
/// grouped into fixed-size chunks reduced in chunk order, so the result is
/// bitwise independent of the worker count.
MonteCarloResult run_monte_carlo(const ProcessSampler& sampler, std::size_t moment_count,
                                 std::size_t max_count, const ObservationFn& observe,
                                 const MonteCarloOptions& options);

unsigned resolve_workers(unsigned requested);

}  // namespace fuzzybm
