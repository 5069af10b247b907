#include "fuzzybm/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

void MomentAccumulator::add(double x) {
  const double y = x - shift_;
  double p = y;
  sums_[0].add(p);
  for (int k = 1; k < max_moment_; ++k) {
    p *= y;
    sums_[static_cast<std::size_t>(k)].add(p);
  }
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.shift_ != shift_ || other.max_moment_ != max_moment_) {
    throw InvalidArgument("MomentAccumulator::merge: incompatible accumulators");
  }
  for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k].add(other.sums_[k]);
  count_ += other.count_;
}

double MomentAccumulator::raw(int p) const {
  if (p > max_moment_) throw InvalidArgument("MomentAccumulator: moment not tracked");
  return sums_[static_cast<std::size_t>(p - 1)].value() / static_cast<double>(count_);
}

double MomentAccumulator::central(int p) const {
  const double m1 = raw(1);
  switch (p) {
    case 2:
      return std::max(0.0, raw(2) - m1 * m1);
    case 3:
      return raw(3) - 3.0 * m1 * raw(2) + 2.0 * m1 * m1 * m1;
    case 4:
      return raw(4) - 4.0 * m1 * raw(3) + 6.0 * m1 * m1 * raw(2) - 3.0 * m1 * m1 * m1 * m1;
    default:
      throw InvalidArgument("MomentAccumulator: unsupported central moment");
  }
}

double MomentAccumulator::mean() const {
  if (count_ == 0) return std::numeric_limits<double>::quiet_NaN();
  return shift_ + raw(1);
}

double MomentAccumulator::variance() const {
  if (count_ < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto n = static_cast<double>(count_);
  return central(2) * n / (n - 1.0);
}

double MomentAccumulator::std_error() const {
  return std::sqrt(variance() / static_cast<double>(count_));
}

double MomentAccumulator::skewness() const {
  const double m2 = central(2);
  if (m2 <= 0.0) return 0.0;
  return central(3) / std::pow(m2, 1.5);
}

double MomentAccumulator::excess_kurtosis() const {
  const double m2 = central(2);
  if (m2 <= 0.0) return 0.0;
  return central(4) / (m2 * m2) - 3.0;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

struct ChunkResult {
  std::vector<MomentAccumulator> moments;
  std::vector<double> maxima;
};

std::vector<SupportSurface> embed_all(const FuzzyProcessPath& path) {
  std::vector<SupportSurface> surfaces;
  surfaces.reserve(path.values.size());
  for (const auto& v : path.values) surfaces.push_back(embed(v));
  return surfaces;
}

}  // namespace

MonteCarloResult run_monte_carlo(const ProcessSampler& sampler, std::size_t moment_count,
                                 std::size_t max_count, const ObservationFn& observe,
                                 const MonteCarloOptions& options) {
  if (options.samples < 2) throw InvalidArgument("run_monte_carlo: need at least 2 samples");
  if (options.chunk == 0) throw InvalidArgument("run_monte_carlo: chunk size must be positive");

  std::vector<double> moment_values(moment_count);
  std::vector<double> max_values(max_count);

  // Replicate 0 fixes the shift of every accumulator.
  {
    const SampledPath first = sampler.sample_with_driver(replicate_seed(options.seed, 0));
    observe(first, embed_all(first.path), moment_values, max_values);
  }
  const std::vector<double> shifts = moment_values;

  const std::size_t chunk_count = (options.samples + options.chunk - 1) / options.chunk;
  std::vector<ChunkResult> chunks(chunk_count);
  std::atomic<std::size_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    std::vector<double> values(moment_count);
    std::vector<double> maxima(max_count);
    try {
      for (std::size_t c = next_chunk++; c < chunk_count; c = next_chunk++) {
        ChunkResult result;
        result.moments.reserve(moment_count);
        for (double s : shifts) result.moments.emplace_back(s, options.max_moment);
        result.maxima.assign(max_count, -std::numeric_limits<double>::infinity());
        const std::size_t begin = c * options.chunk;
        const std::size_t end = std::min(options.samples, begin + options.chunk);
        for (std::size_t r = begin; r < end; ++r) {
          const SampledPath sample = sampler.sample_with_driver(replicate_seed(options.seed, r));
          observe(sample, embed_all(sample.path), values, maxima);
          for (std::size_t k = 0; k < moment_count; ++k) result.moments[k].add(values[k]);
          for (std::size_t k = 0; k < max_count; ++k) {
            result.maxima[k] = std::max(result.maxima[k], maxima[k]);
          }
        }
        chunks[c] = std::move(result);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = chunk_count;
    }
  };

  const unsigned workers =
      std::min<unsigned>(resolve_workers(options.workers), static_cast<unsigned>(chunk_count));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  MonteCarloResult out;
  out.samples = options.samples;
  for (double s : shifts) out.moments.emplace_back(s, options.max_moment);
  out.maxima.assign(max_count, -std::numeric_limits<double>::infinity());
  for (const auto& chunk : chunks) {
    for (std::size_t k = 0; k < moment_count; ++k) out.moments[k].merge(chunk.moments[k]);
    for (std::size_t k = 0; k < max_count; ++k) out.maxima[k] = std::max(out.maxima[k], chunk.maxima[k]);
  }
  return out;
}

}  // namespace fuzzybm
