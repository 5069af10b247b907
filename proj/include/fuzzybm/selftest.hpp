#pragma once

#include <cstddef>
#include <cstdint>

#include "fuzzybm/verify.hpp"

namespace fuzzybm {

// Exact (non-statistical) invariant suites. Each check's estimate is the worst
// violation over all instances and passes when it is within the tolerance.

struct AlgebraSelftestOptions {
  std::size_t instances = 1000;
  int dim = 2;
  std::size_t directions = 128;
  std::size_t levels = 5;
  double tolerance = 1e-12;
};

// Support additivity, positive homogeneity, embedding semilinearity, the
// d_infinity / sup-norm isometry and nestedness preservation.
VerificationReport run_algebra_selftest(std::uint64_t seed, AlgebraSelftestOptions options = {});

struct HausdorffSelftestOptions {
  std::size_t pairs = 500;
  std::size_t coarse_directions = 128;
  std::size_t fine_directions = 512;
  std::size_t max_vertices = 8;
  double relative_tolerance = 0.02;
};

// Grid Hausdorff against the exact polygon oracle in the plane.
VerificationReport run_hausdorff_selftest(std::uint64_t seed, HausdorffSelftestOptions options = {});

struct AumannSelftestOptions {
  std::size_t instances = 300;
  std::size_t directions = 128;
  std::size_t levels = 5;
  std::size_t max_atoms = 6;
  std::size_t max_vertices = 5;
};

// Aumann/support duality and agreement of is_singleton_ae with the
// extreme-selection brute force.
VerificationReport run_aumann_selftest(std::uint64_t seed, AumannSelftestOptions options = {});

struct SeparatorSelftestOptions {
  std::size_t pairs = 1000;
  int dim = 2;
  std::size_t max_atoms = 6;
};

VerificationReport run_separator_selftest(std::uint64_t seed, SeparatorSelftestOptions options = {});

// All four suites with default sizes, merged into one report.
VerificationReport run_selftest(std::uint64_t seed);

}  // namespace fuzzybm
