#include "fuzzybm/generators.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

Point random_point(int dim, Rng& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Point p(static_cast<std::size_t>(dim));
  for (auto& c : p) c = u(rng);
  return p;
}

ConvexBody random_polytope(const GridPtr& grid, Rng& rng, std::size_t max_vertices, double spread) {
  if (max_vertices < 3) throw InvalidArgument("random_polytope: need max_vertices >= 3");
  const int dim = grid->dim();
  const Point center = random_point(dim, rng, spread);
  std::uniform_int_distribution<std::size_t> count(3, max_vertices);
  std::uniform_real_distribution<double> radius(0.2, 1.5);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = count(rng);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point dir(static_cast<std::size_t>(dim));
    double len = 0.0;
    while (len < 1e-6) {
      for (auto& c : dir) c = normal(rng);
      len = euclidean_norm(dir);
    }
    const double r = radius(rng);
    Point p(center);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += r * dir[j] / len;
    pts.push_back(std::move(p));
  }
  return ConvexBody::from_vertices(grid, std::move(pts));
}

FuzzySet random_fuzzy_set(const GridPtr& grid, const AlphaGrid& alpha_grid, Rng& rng,
                          std::size_t max_vertices, bool polygon_core) {
  const ConvexBody outline = random_polytope(grid, rng, max_vertices, 1.0);
  const auto& vs = outline.vertices();
  Point centroid(static_cast<std::size_t>(grid->dim()), 0.0);
  for (const auto& v : vs) {
    for (std::size_t j = 0; j < centroid.size(); ++j) centroid[j] += v[j] / static_cast<double>(vs.size());
  }
  std::vector<Point> centered = vs;
  for (auto& v : centered) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= centroid[j];
  }
  const ConvexBody shape = ConvexBody::from_vertices(grid, std::move(centered));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool crisp_core = polygon_core && unit(rng) < 0.5;
  const ConvexBody core = crisp_core ? random_polytope(grid, rng, 4, 1.0)
                                     : ConvexBody::singleton(grid, random_point(grid->dim(), rng));
  const double lambda_top = unit(rng) < 0.3 ? 0.0 : 0.5 * unit(rng);
  const double lambda_support = lambda_top + 0.1 + unit(rng);
  std::vector<ConvexBody> cuts;
  for (std::size_t slot = 0; slot < alpha_grid.slot_count(); ++slot) {
    const double a = alpha_grid.alpha_at(slot);
    const double lambda = lambda_top + (1.0 - a) * (lambda_support - lambda_top);
    cuts.push_back(minkowski_sum(core, scale(lambda, shape)));
  }
  return make_fuzzy(alpha_grid, std::move(cuts));
}

DiscreteRandomFuzzySet random_random_fuzzy_set(const GridPtr& grid, const AlphaGrid& alpha_grid,
                                               Rng& rng, RandomSetShape shape) {
  std::uniform_int_distribution<std::size_t> atoms(1, shape.max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = atoms(rng);
  std::vector<double> weights(n);
  double total = 0.0;
  for (auto& w : weights) {
    w = 0.05 + unit(rng);
    total += w;
  }
  for (auto& w : weights) w /= total;
  std::vector<std::string> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = "w" + std::to_string(k);
  // Renormalization can leave the sum a few ulps away from 1.
  double sum = 0.0;
  for (double w : weights) sum += w;

  std::vector<FuzzySet> values;
  values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (unit(rng) < shape.singleton_probability) {
      values.push_back(indicator(grid, alpha_grid, random_point(grid->dim(), rng, 2.0)));
    } else {
      values.push_back(random_fuzzy_set(grid, alpha_grid, rng, shape.max_vertices, false));
    }
  }
  return DiscreteRandomFuzzySet(FiniteSpace(std::move(ids), std::move(weights), sum), std::move(values));
}

}  // namespace fuzzybm
