#pragma once

#include <cstddef>
#include <random>

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/geometry.hpp"
#include "fuzzybm/random_sets.hpp"

namespace fuzzybm {

using Rng = std::mt19937_64;

// Hull of 3..max_vertices points scattered around a random center in
// [-spread, spread]^d at radii in [0.2, 1.5]. Polygon (d = 2) or interval (d = 1).
ConvexBody random_polytope(const GridPtr& grid, Rng& rng, std::size_t max_vertices = 8,
                           double spread = 2.0);

// Nested stack core + lambda(a) * (P - centroid(P)) with lambda decreasing in a.
// With a point core every cut keeps at most max_vertices vertices.
FuzzySet random_fuzzy_set(const GridPtr& grid, const AlphaGrid& alpha_grid, Rng& rng,
                          std::size_t max_vertices = 6, bool polygon_core = true);

struct RandomSetShape {
  std::size_t max_atoms = 6;
  std::size_t max_vertices = 5;
  // Probability that an atom's value collapses to a singleton fuzzy set.
  double singleton_probability = 0.5;
};

// Dirichlet-like random weights; values mix singletons and small polygons.
DiscreteRandomFuzzySet random_random_fuzzy_set(const GridPtr& grid, const AlphaGrid& alpha_grid,
                                               Rng& rng, RandomSetShape shape = {});

Point random_point(int dim, Rng& rng, double spread = 1.0);

}  // namespace fuzzybm
