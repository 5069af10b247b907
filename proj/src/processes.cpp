#include "fuzzybm/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(mix_seed(base) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

std::vector<double> default_horizon() {
  std::vector<double> times;
  for (int k = 0; k <= 8; ++k) times.push_back(0.25 * k);
  return times;
}

WienerPath sample_wiener_path(const std::vector<double>& times, int dim, double sigma2,
                              std::uint64_t seed) {
  if (times.empty() || times.front() != 0.0) throw InvalidArgument("sample_wiener_path: times must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1]) || !std::isfinite(times[k])) {
      throw InvalidArgument("sample_wiener_path: times must be strictly ascending");
    }
  }
  if (dim < 1) throw InvalidArgument("sample_wiener_path: dim must be positive");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument("sample_wiener_path: sigma2 must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WienerPath path{times, {}};
  path.points.reserve(times.size());
  Point current(static_cast<std::size_t>(dim), 0.0);
  path.points.push_back(current);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double sd = std::sqrt(sigma2 * (times[k] - times[k - 1]));
    for (auto& c : current) c += sd * normal(rng);
    path.points.push_back(current);
  }
  return path;
}

std::size_t FuzzyProcessPath::index_of(double t) const {
  const auto it = std::find(times.begin(), times.end(), t);
  if (it == times.end()) {
    std::ostringstream os;
    os << "time " << t << " is not on the sampled grid";
    throw InvalidArgument(os.str());
  }
  return static_cast<std::size_t>(it - times.begin());
}

FuzzyProcessPath fuzzy_brownian(const WienerPath& path, GridPtr grid, const AlphaGrid& alpha_grid) {
  FuzzyProcessPath out{path.times, {}};
  out.values.reserve(path.points.size());
  for (const auto& p : path.points) out.values.push_back(indicator(grid, alpha_grid, p));
  return out;
}

GaussianFuzzyLaw::GaussianFuzzyLaw(FuzzySet mean_value, Eigen::MatrixXd cov)
    : mean(std::move(mean_value)), covariance(std::move(cov)) {
  const auto d = static_cast<Eigen::Index>(mean.dim());
  if (covariance.rows() != d || covariance.cols() != d) {
    throw InvalidArgument("GaussianFuzzyLaw: covariance must be d x d");
  }
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("GaussianFuzzyLaw: covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("GaussianFuzzyLaw: covariance is not positive semidefinite");
  }
}

FuzzySet sample_gaussian_frv(const GaussianFuzzyLaw& law, std::uint64_t seed) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(law.covariance);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(root.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = normal(rng);
  const Eigen::VectorXd xi = eig.eigenvectors() * root.cwiseProduct(z);
  Point shift(xi.data(), xi.data() + xi.size());
  return fuzzy_sum(law.mean, indicator(law.mean.grid_ptr(), law.mean.alpha_grid(), shift));
}

std::string describe(const Transform& transform) {
  std::ostringstream os;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Shift>) {
          os << "shift(t0=" << t.t0 << (t.mode == ShiftMode::raw ? ",raw" : ",increment") << ")";
        } else if constexpr (std::is_same_v<T, Rescale>) {
          os << "rescale(lambda=" << t.lambda << ")";
        } else if constexpr (std::is_same_v<T, Translate>) {
          os << "translate(nu)";
        } else {
          os << "time_inversion("
             << (t.variant == InversionVariant::reciprocal ? "1/t" : "1/sqrt(t)") << ")";
        }
      },
      transform);
  return os.str();
}

namespace {

// One output entry: output time and the base index it reads from. A base
// index of npos marks the synthetic t = 0 value of the time inversion.
struct Reindex {
  double time;
  std::size_t base;
};
constexpr std::size_t kOrigin = static_cast<std::size_t>(-1);

std::vector<Reindex> reindex(const std::vector<double>& times, const Transform& transform) {
  std::vector<Reindex> out;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Shift>) {
          if (!(t.t0 >= 0.0)) throw InvalidArgument("shift: t0 must be non-negative");
          const auto it = std::find(times.begin(), times.end(), t.t0);
          if (it == times.end()) throw InvalidArgument("shift: t0 is not on the sampled grid");
          for (auto k = static_cast<std::size_t>(it - times.begin()); k < times.size(); ++k) {
            out.push_back({times[k] - t.t0, k});
          }
        } else if constexpr (std::is_same_v<T, Rescale>) {
          if (!(t.lambda > 0.0) || !std::isfinite(t.lambda)) {
            throw InvalidArgument("rescale: lambda must be positive");
          }
          for (std::size_t k = 0; k < times.size(); ++k) out.push_back({times[k] / t.lambda, k});
        } else if constexpr (std::is_same_v<T, Translate>) {
          for (std::size_t k = 0; k < times.size(); ++k) out.push_back({times[k], k});
        } else {
          out.push_back({0.0, kOrigin});
          for (std::size_t k = 0; k < times.size(); ++k) {
            if (times[k] <= 0.0) continue;
            const double inv = t.variant == InversionVariant::reciprocal
                                   ? 1.0 / times[k]
                                   : 1.0 / (times[k] * times[k]);
            out.push_back({inv, k});
          }
          std::sort(out.begin(), out.end(),
                    [](const Reindex& a, const Reindex& b) { return a.time < b.time; });
        }
      },
      transform);
  return out;
}

}  // namespace

std::vector<double> transformed_times(const std::vector<double>& times, const Transform& transform) {
  std::vector<double> out;
  for (const auto& r : reindex(times, transform)) out.push_back(r.time);
  return out;
}

FuzzyProcessPath transform_process(const FuzzyProcessPath& path, const Transform& transform) {
  if (path.values.empty()) throw InvalidArgument("transform_process: empty path");
  const auto entries = reindex(path.times, transform);
  FuzzyProcessPath out;
  out.times.reserve(entries.size());
  out.values.reserve(entries.size());
  const FuzzySet& first = path.values.front();

  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Shift>) {
          const std::size_t start = entries.front().base;
          const FuzzySet reflected = fuzzy_scale(-1.0, path.values[start]);
          for (const auto& e : entries) {
            out.times.push_back(e.time);
            out.values.push_back(t.mode == ShiftMode::increment
                                     ? fuzzy_sum(path.values[e.base], reflected)
                                     : path.values[e.base]);
          }
        } else if constexpr (std::is_same_v<T, Rescale>) {
          const double factor = 1.0 / std::sqrt(t.lambda);
          for (const auto& e : entries) {
            out.times.push_back(e.time);
            out.values.push_back(fuzzy_scale(factor, path.values[e.base]));
          }
        } else if constexpr (std::is_same_v<T, Translate>) {
          for (const auto& e : entries) {
            out.times.push_back(e.time);
            out.values.push_back(fuzzy_sum(t.nu, path.values[e.base]));
          }
        } else {
          const Point zero(static_cast<std::size_t>(first.dim()), 0.0);
          for (const auto& e : entries) {
            out.times.push_back(e.time);
            out.values.push_back(e.base == kOrigin
                                     ? indicator(first.grid_ptr(), first.alpha_grid(), zero)
                                     : fuzzy_scale(e.time, path.values[e.base]));
          }
        }
      },
      transform);
  return out;
}

std::size_t ProcessSampler::time_index(double t) const {
  const auto& ts = times();
  const auto it = std::find(ts.begin(), ts.end(), t);
  if (it == ts.end()) {
    std::ostringstream os;
    os << "time " << t << " is not on the sampler grid";
    throw InvalidArgument(os.str());
  }
  return static_cast<std::size_t>(it - ts.begin());
}

namespace {

class BrownianSampler final : public ProcessSampler {
 public:
  explicit BrownianSampler(BrownianOptions options) : options_(std::move(options)) {
    if (!options_.grid) throw InvalidArgument("brownian_sampler: missing direction grid");
    // Validate times and sigma2 eagerly.
    sample_wiener_path(options_.times, options_.grid->dim(), options_.sigma2, 0);
  }

  const std::vector<double>& times() const override { return options_.times; }
  const GridPtr& grid() const override { return options_.grid; }
  const AlphaGrid& alpha_grid() const override { return options_.alpha_grid; }

  SampledPath sample_with_driver(std::uint64_t seed) const override {
    SampledPath out;
    out.driver = sample_wiener_path(options_.times, options_.grid->dim(), options_.sigma2, seed);
    out.path = fuzzy_brownian(out.driver, options_.grid, options_.alpha_grid);
    return out;
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "bm(sigma2=" << options_.sigma2 << ")";
    return os.str();
  }

 private:
  BrownianOptions options_;
};

class TransformedSampler final : public ProcessSampler {
 public:
  TransformedSampler(SamplerPtr base, Transform transform)
      : base_(std::move(base)),
        transform_(std::move(transform)),
        times_(transformed_times(base_->times(), transform_)) {
    if (const auto* tr = std::get_if<Translate>(&transform_)) {
      if (!(tr->nu.grid() == *base_->grid()) || !(tr->nu.alpha_grid() == base_->alpha_grid())) {
        throw InvalidArgument("translate: nu must share the sampler grids");
      }
    }
  }

  const std::vector<double>& times() const override { return times_; }
  const GridPtr& grid() const override { return base_->grid(); }
  const AlphaGrid& alpha_grid() const override { return base_->alpha_grid(); }

  SampledPath sample_with_driver(std::uint64_t seed) const override {
    SampledPath out = base_->sample_with_driver(seed);
    out.path = transform_process(out.path, transform_);
    return out;
  }

  std::string describe() const override { return fuzzybm::describe(transform_) + " of " + base_->describe(); }

 private:
  SamplerPtr base_;
  Transform transform_;
  std::vector<double> times_;
};

class ConstantSampler final : public ProcessSampler {
 public:
  ConstantSampler(GridPtr grid, AlphaGrid alpha_grid, std::vector<double> times)
      : grid_(std::move(grid)), alpha_grid_(std::move(alpha_grid)), times_(std::move(times)) {
    if (!grid_) throw InvalidArgument("constant_sampler: missing direction grid");
    if (times_.empty()) throw InvalidArgument("constant_sampler: empty time grid");
    const Point zero(static_cast<std::size_t>(grid_->dim()), 0.0);
    value_ = std::make_shared<const FuzzySet>(indicator(grid_, alpha_grid_, zero));
  }

  const std::vector<double>& times() const override { return times_; }
  const GridPtr& grid() const override { return grid_; }
  const AlphaGrid& alpha_grid() const override { return alpha_grid_; }

  SampledPath sample_with_driver(std::uint64_t) const override {
    SampledPath out;
    out.driver.times = times_;
    out.driver.points.assign(times_.size(), Point(static_cast<std::size_t>(grid_->dim()), 0.0));
    out.path.times = times_;
    out.path.values.assign(times_.size(), *value_);
    return out;
  }

  std::string describe() const override { return "constant(1_0)"; }

 private:
  GridPtr grid_;
  AlphaGrid alpha_grid_;
  std::vector<double> times_;
  std::shared_ptr<const FuzzySet> value_;
};

}  // namespace

SamplerPtr brownian_sampler(BrownianOptions options) {
  return std::make_shared<BrownianSampler>(std::move(options));
}

SamplerPtr transformed_sampler(SamplerPtr base, Transform transform) {
  if (!base) throw InvalidArgument("transformed_sampler: null base sampler");
  return std::make_shared<TransformedSampler>(std::move(base), std::move(transform));
}

SamplerPtr constant_sampler(GridPtr grid, AlphaGrid alpha_grid, std::vector<double> times) {
  return std::make_shared<ConstantSampler>(std::move(grid), std::move(alpha_grid), std::move(times));
}

CounterexampleSampler::CounterexampleSampler(FuzzySet nu, std::uint64_t base_seed,
                                             BrownianOptions options)
    : nu_(std::move(nu)), base_seed_(base_seed) {
  options.grid = nu_.grid_ptr();
  options.alpha_grid = nu_.alpha_grid();
  inner_ = transformed_sampler(brownian_sampler(std::move(options)), Translate{nu_});
}

std::shared_ptr<const CounterexampleSampler> counterexample_generator(FuzzySet nu,
                                                                     std::uint64_t base_seed,
                                                                     std::vector<double> times,
                                                                     double sigma2) {
  BrownianOptions options{nu.grid_ptr(), nu.alpha_grid(), std::move(times), sigma2};
  return std::make_shared<CounterexampleSampler>(std::move(nu), base_seed, std::move(options));
}

}  // namespace fuzzybm
