#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/processes.hpp"

namespace fuzzybm {

struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double ci_level = 0.997;

  EstimatorResult() = default;
  EstimatorResult(double estimate, double std_error, std::size_t n_samples, double ci_level = 0.997);
};

// One row of a report. pass == |estimate - target| <= z * std_error + tolerance.
// Exact (non-statistical) checks carry std_error 0 and a tolerance.
struct CheckEntry {
  std::string test;
  std::string functional;
  std::optional<double> t;
  std::optional<double> s;
  double target = 0.0;
  EstimatorResult result;
  double z = 3.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckEntry make_check(std::string test, std::string functional, std::optional<double> t,
                      std::optional<double> s, double target, EstimatorResult result, double z,
                      double tolerance = 0.0);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string name;
  std::string sampler;
  std::uint64_t seed = 0;
  double z = 3.0;
  bool pass = false;
  std::vector<CheckEntry> checks;
  std::vector<Verdict> verdicts;

  const Verdict* verdict(const std::string& verdict_name) const;
  // All checks whose test field equals `test`.
  std::vector<const CheckEntry*> checks_named(const std::string& test) const;
};

struct EstimationOptions {
  unsigned workers = 0;
};

// Sample mean of f(embed(B_t)) over N independent paths.
EstimatorResult estimate_mean_functional(const ProcessSampler& sampler, const GridFunctional& f,
                                         double t, std::size_t n, std::uint64_t seed,
                                         EstimationOptions options = {});

// Sample mean of f(embed(B_t)) * g(embed(B_s)).
EstimatorResult estimate_cov_functional(const ProcessSampler& sampler, const GridFunctional& f,
                                        const GridFunctional& g, double s, double t, std::size_t n,
                                        std::uint64_t seed, EstimationOptions options = {});

struct DegeneracyOptions {
  unsigned workers = 0;
  double z = 4.0;
  double ci_z = 3.0;
  double diameter_tol = 1e-9;
  // Replicates forming the empirical atom measure for the singleton detector.
  std::size_t detector_atoms = 1000;
};

/// Checks the two-step collapse E[B_t] = 1_0 (zero support-average surface)
/// and (B_t)_alpha a.e. singletons. The second step runs only on (t, alpha)
/// pairs whose first step passed.
VerificationReport degeneracy_test(const ProcessSampler& sampler, const std::vector<double>& times,
                                   const std::vector<double>& alpha_levels, std::size_t n,
                                   std::uint64_t seed, DegeneracyOptions options = {});

struct CharacterizationOptions {
  unsigned workers = 0;
  std::size_t covariance_triples = 25;
  std::size_t cross_pairs = 10;
  double z = 4.0;
  double family_alpha = 0.003;
  bool normality = true;
};

/// Zero-mean, t ^ s covariance and cross-orthogonality tests over random grid
/// functionals, plus skewness / excess-kurtosis z-tests. The overall verdict
/// uses z = max(options.z, Bonferroni z for the number of checks).
VerificationReport characterization_suite(const ProcessSampler& sampler,
                                          std::size_t functional_count,
                                          const std::vector<double>& times, std::size_t n,
                                          std::uint64_t seed, CharacterizationOptions options = {});

double bonferroni_z(double family_alpha, std::size_t tests);

}  // namespace fuzzybm
