#include "fuzzybm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzybm/errors.hpp"
#include "fuzzybm/generators.hpp"

namespace fuzzybm {

namespace {

CheckEntry exact_check(std::string test, std::string what, double worst, std::size_t instances,
                       double tolerance) {
  return make_check(std::move(test), std::move(what), std::nullopt, std::nullopt, 0.0,
                    EstimatorResult(worst, 0.0, std::max<std::size_t>(instances, 2)), 0.0,
                    tolerance);
}

void finish(VerificationReport& report) {
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckEntry& c) { return c.pass; });
  report.verdicts.push_back({report.name, report.pass, ""});
}

double support_gap(const ConvexBody& body, const std::vector<double>& expected) {
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    worst = std::max(worst, std::abs(body.support(i) - expected[i]));
  }
  return worst;
}

// Largest amount by which a higher-level cut pokes out of the next lower one.
double nesting_violation(const FuzzySet& nu) {
  double worst = 0.0;
  const auto& cuts = nu.cuts();
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    for (std::size_t i = 0; i < nu.grid().size(); ++i) {
      worst = std::max(worst, cuts[j].support(i) - cuts[j + 1].support(i));
    }
  }
  return worst;
}

}  // namespace

VerificationReport run_algebra_selftest(std::uint64_t seed, AlgebraSelftestOptions options) {
  VerificationReport report;
  report.name = "algebra";
  report.sampler = "none";
  report.seed = seed;
  report.z = 0.0;

  const GridPtr grid = make_direction_grid(options.dim, options.directions, seed);
  const AlphaGrid ag = AlphaGrid::uniform(options.levels);
  Rng rng(mix_seed(seed));
  std::uniform_real_distribution<double> lambda_dist(0.0, 3.0);

  double additivity = 0.0, homogeneity = 0.0, semilinear = 0.0, isometry = 0.0, nesting = 0.0;
  for (std::size_t k = 0; k < options.instances; ++k) {
    const ConvexBody a = random_polytope(grid, rng, 6);
    const ConvexBody b = random_polytope(grid, rng, 6);
    const double lambda = lambda_dist(rng);

    std::vector<double> expected(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) expected[i] = a.support(i) + b.support(i);
    additivity = std::max(additivity, support_gap(minkowski_sum(a, b), expected));
    for (std::size_t i = 0; i < grid->size(); ++i) expected[i] = lambda * a.support(i);
    homogeneity = std::max(homogeneity, support_gap(scale(lambda, a), expected));

    const FuzzySet nu = random_fuzzy_set(grid, ag, rng);
    const FuzzySet eta = random_fuzzy_set(grid, ag, rng);
    const double mu = lambda_dist(rng);
    const FuzzySet combo = fuzzy_sum(fuzzy_scale(lambda, nu), fuzzy_scale(mu, eta));
    const SupportSurface lhs = embed(combo);
    const SupportSurface rhs = lambda * embed(nu) + mu * embed(eta);
    semilinear = std::max(semilinear, (lhs - rhs).sup_norm());

    isometry = std::max(isometry, std::abs(d_infinity(nu, eta) - (embed(nu) - embed(eta)).sup_norm()));
    nesting = std::max({nesting, nesting_violation(combo), nesting_violation(fuzzy_scale(lambda, nu))});
  }

  const std::size_t n = options.instances;
  const double tol = options.tolerance;
  report.checks.push_back(exact_check("support_additivity", "max|s_{A+B} - s_A - s_B|", additivity, n, tol));
  report.checks.push_back(exact_check("positive_homogeneity", "max|s_{lA} - l s_A|", homogeneity, n, tol));
  report.checks.push_back(exact_check("embedding_semilinearity", "max|j(l nu + m eta) - l j(nu) - m j(eta)|", semilinear, n, tol));
  report.checks.push_back(exact_check("isometry", "max|d_inf - sup|j(nu) - j(eta)||", isometry, n, tol));
  report.checks.push_back(exact_check("nestedness", "max cut excess over next level", nesting, n, tol));
  finish(report);
  return report;
}

VerificationReport run_hausdorff_selftest(std::uint64_t seed, HausdorffSelftestOptions options) {
  VerificationReport report;
  report.name = "hausdorff";
  report.sampler = "none";
  report.seed = seed;
  report.z = 0.0;

  const GridPtr coarse = make_direction_grid(2, options.coarse_directions, seed);
  const GridPtr fine = make_direction_grid(2, options.fine_directions, seed);
  Rng rng(mix_seed(seed + 1));

  double above_exact = 0.0, relative = 0.0, refinement_drop = 0.0;
  for (std::size_t k = 0; k < options.pairs; ++k) {
    const ConvexBody a = random_polytope(fine, rng, options.max_vertices);
    const ConvexBody b = random_polytope(fine, rng, options.max_vertices);
    const ConvexBody ac = ConvexBody::from_vertices(coarse, a.vertices());
    const ConvexBody bc = ConvexBody::from_vertices(coarse, b.vertices());
    const double exact = hausdorff_exact_polygon(a, b);
    const double h_fine = hausdorff(a, b);
    const double h_coarse = hausdorff(ac, bc);
    above_exact = std::max(above_exact, h_fine - exact);
    if (exact > 0.0) relative = std::max(relative, std::abs(exact - h_fine) / exact);
    refinement_drop = std::max(refinement_drop, h_coarse - h_fine);
  }

  const std::size_t n = options.pairs;
  report.checks.push_back(exact_check("grid_below_exact", "max(grid - exact)", above_exact, n, 1e-12));
  report.checks.push_back(exact_check("relative_error", "max|exact - grid| / exact", relative, n, options.relative_tolerance));
  report.checks.push_back(exact_check("refinement_monotone", "max(coarse - fine)", refinement_drop, n, 0.0));
  finish(report);
  return report;
}

namespace {

// Brute force: the integral is a point iff all extreme-selection integrals agree.
bool integrals_coincide(const DiscreteRandomFuzzySet& x, double alpha) {
  SelectionEnumerator it = extreme_selections(x, alpha);
  Selection sel;
  if (!it.next(sel)) return true;
  const Point first = selection_integral(x.space(), sel);
  while (it.next(sel)) {
    const Point p = selection_integral(x.space(), sel);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (std::abs(p[j] - first[j]) > kSingletonTolerance) return false;
    }
  }
  return true;
}

}  // namespace

VerificationReport run_aumann_selftest(std::uint64_t seed, AumannSelftestOptions options) {
  VerificationReport report;
  report.name = "aumann";
  report.sampler = "none";
  report.seed = seed;
  report.z = 0.0;

  const GridPtr grid = make_direction_grid(2, options.directions, seed);
  const AlphaGrid ag = AlphaGrid::uniform(options.levels);
  Rng rng(mix_seed(seed + 2));
  RandomSetShape shape;
  shape.max_atoms = options.max_atoms;
  shape.max_vertices = options.max_vertices;

  double duality = 0.0;
  std::size_t disagreements = 0, oversized = 0;
  for (std::size_t k = 0; k < options.instances; ++k) {
    const DiscreteRandomFuzzySet x = random_random_fuzzy_set(grid, ag, rng, shape);
    const FuzzySet e = aumann_expectation(x);
    bool agree = true;
    for (std::size_t slot = 0; slot < ag.slot_count(); ++slot) {
      std::vector<double> expected(grid->size(), 0.0);
      for (std::size_t w = 0; w < x.space().size(); ++w) {
        const ConvexBody& c = x.value(w).cut_at_slot(slot);
        if (c.vertices().size() > options.max_vertices) ++oversized;
        for (std::size_t i = 0; i < grid->size(); ++i) expected[i] += x.space().weight(w) * c.support(i);
      }
      duality = std::max(duality, support_gap(e.cut_at_slot(slot), expected));
      const double alpha = ag.alpha_at(slot);
      if (is_singleton_ae(x, alpha).singleton != integrals_coincide(x, alpha)) agree = false;
    }
    if (!agree) ++disagreements;
  }

  const std::size_t n = options.instances;
  report.checks.push_back(exact_check("aumann_duality", "max|s_E - sum mu s_X|", duality, n, 1e-12));
  report.checks.push_back(exact_check("singleton_oracle", "instances disagreeing with brute force",
                                      static_cast<double>(disagreements), n, 0.0));
  report.checks.push_back(exact_check("cut_vertex_bound", "cuts above the vertex bound",
                                      static_cast<double>(oversized), n, 0.0));
  finish(report);
  return report;
}

VerificationReport run_separator_selftest(std::uint64_t seed, SeparatorSelftestOptions options) {
  VerificationReport report;
  report.name = "separator";
  report.sampler = "none";
  report.seed = seed;
  report.z = 0.0;

  Rng rng(mix_seed(seed + 3));
  std::uniform_int_distribution<std::size_t> atom_count(1, options.max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double magnitudes[] = {1e-6, 1e-3, 1.0};

  std::size_t missed = 0, wrong_set = 0, false_positive = 0;
  for (std::size_t k = 0; k < options.pairs; ++k) {
    const std::size_t n = atom_count(rng);
    std::vector<double> weights(n);
    double total = 0.0;
    for (auto& w : weights) total += (w = 0.05 + unit(rng));
    for (auto& w : weights) w /= total;
    double sum = 0.0;
    for (double w : weights) sum += w;
    std::vector<std::string> ids(n);
    for (std::size_t a = 0; a < n; ++a) ids[a] = "w" + std::to_string(a);
    const FiniteSpace space(std::move(ids), std::move(weights), sum);

    Selection x1(n), x2;
    for (auto& p : x1) p = random_point(options.dim, rng, 2.0);
    x2 = x1;
    if (const auto same = find_separator(x1, x2, space)) ++false_positive;

    // Perturb a nonempty subset of atoms, sometimes along a single coordinate.
    const std::size_t forced = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != forced && unit(rng) < 0.5) continue;
      const double mag = magnitudes[std::uniform_int_distribution<int>(0, 2)(rng)];
      if (unit(rng) < 0.3) {
        const auto axis = std::uniform_int_distribution<int>(0, options.dim - 1)(rng);
        x2[a][static_cast<std::size_t>(axis)] += unit(rng) < 0.5 ? mag : -mag;
      } else {
        const Point dir = random_point(options.dim, rng, 1.0);
        const double len = euclidean_norm(dir);
        if (len == 0.0) continue;
        for (std::size_t j = 0; j < dir.size(); ++j) x2[a][j] += mag * dir[j] / len;
      }
    }

    const auto sep = find_separator(x1, x2, space);
    if (!sep || !(sep->measure > 0.0)) {
      ++missed;
      continue;
    }
    double mass = 0.0;
    bool ok = !sep->atoms.empty();
    for (std::size_t a : sep->atoms) {
      ok = ok && sep->functional(x1[a]) > sep->functional(x2[a]);
      mass += space.weight(a);
    }
    if (!ok || std::abs(mass - sep->measure) > 1e-15) ++wrong_set;
  }

  const std::size_t n = options.pairs;
  report.checks.push_back(exact_check("separator_found", "pairs without positive-measure separator",
                                      static_cast<double>(missed), n, 0.0));
  report.checks.push_back(exact_check("separator_set", "pairs with an inconsistent A_phi",
                                      static_cast<double>(wrong_set), n, 0.0));
  report.checks.push_back(exact_check("separator_identical", "identical pairs reported separated",
                                      static_cast<double>(false_positive), n, 0.0));
  finish(report);
  return report;
}

VerificationReport run_selftest(std::uint64_t seed) {
  VerificationReport merged;
  merged.name = "selftest";
  merged.sampler = "none";
  merged.seed = seed;
  merged.z = 0.0;
  for (const VerificationReport& r : {run_algebra_selftest(seed), run_hausdorff_selftest(seed),
                                      run_aumann_selftest(seed), run_separator_selftest(seed)}) {
    merged.checks.insert(merged.checks.end(), r.checks.begin(), r.checks.end());
    merged.verdicts.insert(merged.verdicts.end(), r.verdicts.begin(), r.verdicts.end());
  }
  merged.pass = std::all_of(merged.verdicts.begin(), merged.verdicts.end(),
                            [](const Verdict& v) { return v.pass; });
  return merged;
}

}  // namespace fuzzybm
