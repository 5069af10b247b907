#include <gtest/gtest.h>

#include <cmath>

#include "fuzzybm/errors.hpp"
#include "fuzzybm/generators.hpp"
#include "fuzzybm/processes.hpp"

using namespace fuzzybm;

namespace {

GridPtr g2() { return make_direction_grid(2, 64, 0); }

// Two-pass moments, kept separate from the streaming accumulator.
struct Moments {
  double mean = 0.0, var = 0.0;
};

Moments two_pass(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= xs.size();
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= (xs.size() - 1);
  return m;
}

}  // namespace

TEST(Wiener, SingleTime) {
  const WienerPath p = sample_wiener_path({0.0}, 3, 1.0, 5);
  ASSERT_EQ(p.points.size(), 1u);
  EXPECT_EQ(p.points[0], Point(3, 0.0));
}

TEST(Wiener, Deterministic) {
  const auto times = default_horizon();
  const WienerPath a = sample_wiener_path(times, 2, 1.0, 42);
  const WienerPath b = sample_wiener_path(times, 2, 1.0, 42);
  const WienerPath c = sample_wiener_path(times, 2, 1.0, 43);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  EXPECT_EQ(a.points.front(), Point(2, 0.0));
}

TEST(Wiener, InvalidInputs) {
  EXPECT_THROW(sample_wiener_path({}, 2, 1.0, 0), InvalidArgument);
  EXPECT_THROW(sample_wiener_path({0.5, 1.0}, 2, 1.0, 0), InvalidArgument);
  EXPECT_THROW(sample_wiener_path({0.0, 1.0, 1.0}, 2, 1.0, 0), InvalidArgument);
  EXPECT_THROW(sample_wiener_path({0.0, 1.0}, 2, 0.0, 0), InvalidArgument);
  EXPECT_THROW(sample_wiener_path({0.0, 1.0}, 0, 1.0, 0), InvalidArgument);
}

TEST(Wiener, VarianceAndIncrementStructure) {
  const std::size_t n = 100000;
  const double sigma2 = 2.0;
  const std::vector<double> times = {0.0, 0.5, 1.0, 3.0};
  std::vector<double> b1x, b1y, inc_a, inc_b, inc_ab;
  for (std::size_t r = 0; r < n; ++r) {
    const WienerPath p = sample_wiener_path(times, 2, sigma2, replicate_seed(9, r));
    b1x.push_back(p.points[2][0]);
    b1y.push_back(p.points[2][1]);
    const double a = p.points[1][0] - p.points[0][0];   // length 0.5
    const double b = p.points[3][0] - p.points[2][0];   // length 2, disjoint
    inc_a.push_back(a);
    inc_b.push_back(b);
    inc_ab.push_back(a * b);
  }
  // SE of a sample variance of a Gaussian: v sqrt(2 / (n - 1)).
  for (const auto* xs : {&b1x, &b1y}) {
    const Moments m = two_pass(*xs);
    EXPECT_NEAR(m.var, sigma2, 3.0 * sigma2 * std::sqrt(2.0 / (n - 1)));
  }
  const Moments ma = two_pass(inc_a), mb = two_pass(inc_b), mab = two_pass(inc_ab);
  EXPECT_NEAR(ma.var, sigma2 * 0.5, 3.0 * sigma2 * 0.5 * std::sqrt(2.0 / (n - 1)));
  EXPECT_NEAR(mb.var, sigma2 * 2.0, 3.0 * sigma2 * 2.0 * std::sqrt(2.0 / (n - 1)));
  EXPECT_NEAR(mab.mean, 0.0, 3.0 * std::sqrt(mab.var / n));
}

TEST(FuzzyBrownian, DegenerateValues) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  const WienerPath w = sample_wiener_path(default_horizon(), 2, 1.0, 3);
  const FuzzyProcessPath b = fuzzy_brownian(w, g, ag);
  EXPECT_EQ(d_infinity(b.value_at(0.0), indicator(g, ag, {0, 0})), 0.0);
  for (std::size_t k = 0; k < b.times.size(); ++k) {
    for (const auto& c : b.values[k].cuts()) EXPECT_EQ(c.grid_diameter(), 0.0);
    const SupportSurface s = embed(b.values[k]);
    for (std::size_t i = 0; i < g->size(); ++i) {
      for (std::size_t j = 0; j < ag.slot_count(); ++j) EXPECT_EQ(s.at(i, j), dot(g->direction(i), w.points[k]));
    }
  }
  EXPECT_THROW(b.value_at(0.3), InvalidArgument);
}

TEST(FuzzyBrownian, FixedPointOfZeroTranslation) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  const FuzzyProcessPath b = fuzzy_brownian(sample_wiener_path(default_horizon(), 2, 1.0, 4), g, ag);
  const FuzzyProcessPath t = transform_process(b, Translate{indicator(g, ag, {0, 0})});
  ASSERT_EQ(t.times, b.times);
  for (std::size_t k = 0; k < b.times.size(); ++k) EXPECT_EQ(d_infinity(t.values[k], b.values[k]), 0.0);
}

TEST(GaussianFrv, Examples) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  Rng rng(5);
  const FuzzySet mean = random_fuzzy_set(g, ag, rng);
  const FuzzySet same = sample_gaussian_frv(GaussianFuzzyLaw(mean, Eigen::MatrixXd::Zero(2, 2)), 1);
  EXPECT_EQ(d_infinity(same, mean), 0.0);

  const FuzzySet x = sample_gaussian_frv(GaussianFuzzyLaw(indicator(g, ag, {0, 0}), Eigen::MatrixXd::Identity(2, 2)), 2);
  for (const auto& c : x.cuts()) EXPECT_LE(c.grid_diameter(), 1e-15);
}

TEST(GaussianFrv, InvalidLaws) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(2);
  const FuzzySet zero = indicator(g, ag, {0, 0});
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  EXPECT_THROW(GaussianFuzzyLaw(zero, bad), InvalidArgument);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(GaussianFuzzyLaw(zero, asym), InvalidArgument);
  EXPECT_THROW(GaussianFuzzyLaw(zero, Eigen::MatrixXd::Identity(3, 3)), InvalidArgument);
}

TEST(GaussianFrv, DecompositionRoundTrip) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  Rng rng(6);
  Eigen::MatrixXd cov(2, 2);
  cov << 2.0, 0.6, 0.6, 0.5;
  const FuzzySet mean = random_fuzzy_set(g, ag, rng);
  const GaussianFuzzyLaw law(mean, cov);
  const std::size_t ex = g->axis_index(0, true), ey = g->axis_index(1, true);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FuzzySet x = sample_gaussian_frv(law, seed);
    const SupportSurface diff = embed(x) - embed(mean);
    const Point xi{diff.at(ex, 0), diff.at(ey, 0)};
    for (std::size_t i = 0; i < g->size(); ++i) {
      for (std::size_t j = 0; j < ag.slot_count(); ++j) {
        EXPECT_NEAR(diff.at(i, j), dot(g->direction(i), xi), 1e-12);
      }
    }
    for (std::size_t slot = 0; slot < ag.slot_count(); ++slot) {
      double expect = 0.0;
      for (const auto& u : g->directions()) expect = std::max(expect, std::abs(dot(u, xi)));
      EXPECT_NEAR(hausdorff(x.cut_at_slot(slot), mean.cut_at_slot(slot)), expect, 1e-12);
    }
  }
}

TEST(GaussianFrv, MomentsOfXiAndSumClosure) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.3, 0.3, 0.8;
  const FuzzySet m1 = indicator(g, ag, {1.0, -1.0});
  const FuzzySet m2 = crisp(ag, ConvexBody::box(g, {0, 0}, {1, 2}));
  const GaussianFuzzyLaw l1(m1, cov), l2(m2, 0.5 * cov);
  const std::size_t ex = g->axis_index(0, true), ey = g->axis_index(1, true);
  const std::size_t n = 40000;
  std::vector<double> xs, ys, xy, sum;
  for (std::size_t r = 0; r < n; ++r) {
    const FuzzySet a = sample_gaussian_frv(l1, replicate_seed(1, r));
    const FuzzySet b = sample_gaussian_frv(l2, replicate_seed(2, r));
    const SupportSurface d = embed(a) - embed(m1);
    xs.push_back(d.at(ex, 0));
    ys.push_back(d.at(ey, 0));
    xy.push_back(d.at(ex, 0) * d.at(ey, 0));
    sum.push_back(embed(fuzzy_sum(a, b)).at(ey, 1));
  }
  const Moments mx = two_pass(xs), my = two_pass(ys), mxy = two_pass(xy), ms = two_pass(sum);
  EXPECT_NEAR(mx.var, 1.0, 3.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(my.var, 0.8, 3.0 * 0.8 * std::sqrt(2.0 / n));
  EXPECT_NEAR(mxy.mean, 0.3, 3.0 * std::sqrt(mxy.var / n));
  // Support of the sum at e_2: mean -1 + 2.
  EXPECT_NEAR(ms.mean, 1.0, 3.0 * std::sqrt(ms.var / n));
}

TEST(Transform, IdentityCases) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  const FuzzyProcessPath b = fuzzy_brownian(sample_wiener_path(default_horizon(), 2, 1.0, 8), g, ag);
  for (const Transform& t : {Transform{Shift{0.0}}, Transform{Shift{0.0, ShiftMode::raw}}, Transform{Rescale{1.0}}}) {
    const FuzzyProcessPath out = transform_process(b, t);
    ASSERT_EQ(out.times, b.times);
    for (std::size_t k = 0; k < b.times.size(); ++k) EXPECT_EQ(d_infinity(out.values[k], b.values[k]), 0.0);
  }
}

TEST(Transform, ShiftRescaleReindex) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  const WienerPath w = sample_wiener_path(default_horizon(), 2, 1.0, 9);
  const FuzzyProcessPath b = fuzzy_brownian(w, g, ag);

  const FuzzyProcessPath raw = transform_process(b, Shift{0.5, ShiftMode::raw});
  EXPECT_EQ(raw.times.front(), 0.0);
  EXPECT_EQ(raw.times.back(), 1.5);
  EXPECT_EQ(d_infinity(raw.value_at(1.0), b.value_at(1.5)), 0.0);

  const FuzzyProcessPath inc = transform_process(b, Shift{0.5});
  EXPECT_EQ(inc.value_at(0.0).cut_at_slot(0).grid_diameter(), 0.0);
  EXPECT_LE(norm(inc.value_at(0.0).support_set()), 1e-15);
  const Point& p15 = w.points[6];
  const Point& p05 = w.points[2];
  EXPECT_LE(d_infinity(inc.value_at(1.0), indicator(g, ag, {p15[0] - p05[0], p15[1] - p05[1]})), 1e-12);

  const FuzzyProcessPath re = transform_process(b, Rescale{4.0});
  EXPECT_EQ(re.times.back(), 0.5);
  EXPECT_LE(d_infinity(re.value_at(0.5), fuzzy_scale(0.5, b.value_at(2.0))), 1e-15);

  EXPECT_THROW(transform_process(b, Shift{0.3}), InvalidArgument);
  EXPECT_THROW(transform_process(b, Shift{-1.0}), InvalidArgument);
  EXPECT_THROW(transform_process(b, Rescale{0.0}), InvalidArgument);
}

TEST(Transform, TimeInversionVariants) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  const std::vector<double> times = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  const FuzzyProcessPath b = fuzzy_brownian(sample_wiener_path(times, 2, 1.0, 10), g, ag);
  const FuzzyProcessPath inv = transform_process(b, TimeInversion{InversionVariant::reciprocal});
  EXPECT_EQ(inv.times, (std::vector<double>{0.0, 0.25, 0.5, 1.0, 2.0, 4.0}));
  EXPECT_EQ(norm(inv.value_at(0.0).support_set()), 0.0);
  EXPECT_LE(d_infinity(inv.value_at(0.25), fuzzy_scale(0.25, b.value_at(4.0))), 1e-15);

  const FuzzyProcessPath sq = transform_process(b, TimeInversion{InversionVariant::reciprocal_sqrt});
  // s -> 1/s^2
  EXPECT_EQ(sq.times, (std::vector<double>{0.0, 0.0625, 0.25, 1.0, 4.0, 16.0}));
  EXPECT_LE(d_infinity(sq.value_at(4.0), fuzzy_scale(4.0, b.value_at(0.5))), 1e-12);
}

TEST(Samplers, TranslatedBoxMean) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  BrownianOptions opts{g, ag};
  const FuzzySet box = crisp(ag, ConvexBody::box(g, {0, 0}, {1, 1}));
  const SamplerPtr s = transformed_sampler(brownian_sampler(opts), Translate{box});
  const std::size_t ex = g->axis_index(0, true);
  const std::size_t n = 20000;
  std::vector<double> v;
  for (std::size_t r = 0; r < n; ++r) v.push_back(embed(s->sample(replicate_seed(3, r)).value_at(1.0)).at(ex, 1));
  const Moments m = two_pass(v);
  EXPECT_NEAR(m.mean, 1.0, 4.0 * std::sqrt(m.var / n));
  EXPECT_GT(m.mean - 3.0 * std::sqrt(m.var / n), 0.0);
}

TEST(Samplers, TranslateRequiresSharedGrids) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(3);
  const FuzzySet other = indicator(make_direction_grid(2, 32, 0), ag, {0, 0});
  EXPECT_THROW(transformed_sampler(brownian_sampler({g, ag}), Translate{other}), InvalidArgument);
}

TEST(Samplers, DescribeAndTimes) {
  const GridPtr g = g2();
  const SamplerPtr bm = brownian_sampler({g});
  EXPECT_EQ(bm->times(), default_horizon());
  EXPECT_EQ(bm->time_index(0.5), 2u);
  EXPECT_THROW(bm->time_index(0.3), InvalidArgument);
  const SamplerPtr sh = transformed_sampler(bm, Shift{0.5});
  EXPECT_EQ(sh->times().back(), 1.5);
  EXPECT_NE(sh->describe().find("shift"), std::string::npos);
  const SamplerPtr c = constant_sampler(g, AlphaGrid::uniform(5), {0.0, 1.0});
  EXPECT_EQ(norm(c->sample(1).value_at(1.0).support_set()), 0.0);
}

TEST(Counterexample, ZeroNuIsBrownian) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  const auto ce = counterexample_generator(indicator(g, ag, {0, 0}), 77);
  const SamplerPtr bm = brownian_sampler({g, ag});
  for (std::uint64_t r = 0; r < 5; ++r) {
    const SampledPath a = ce->replicate(r);
    const FuzzyProcessPath b = bm->sample(replicate_seed(77, r));
    for (std::size_t k = 0; k < b.times.size(); ++k) EXPECT_EQ(d_infinity(a.path.values[k], b.values[k]), 0.0);
  }
  EXPECT_EQ(ce->base_seed(), 77u);
}

TEST(Counterexample, PointNuShiftsTheMean) {
  const GridPtr g = g2();
  const AlphaGrid ag = AlphaGrid::uniform(5);
  const auto ce = counterexample_generator(indicator(g, ag, {0.7, 0}), 5);
  const std::size_t ex = g->axis_index(0, true);
  const std::size_t n = 20000;
  std::vector<double> v;
  for (std::size_t r = 0; r < n; ++r) v.push_back(embed(ce->replicate(r).path.value_at(1.0)).at(ex, 0));
  const Moments m = two_pass(v);
  EXPECT_NEAR(m.mean, 0.7, 4.0 * std::sqrt(m.var / n));
}

TEST(Seeds, ReplicateSeedsAreDistinct) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t r = 0; r < 1000; ++r) s.push_back(replicate_seed(1, r));
  std::sort(s.begin(), s.end());
  EXPECT_EQ(std::unique(s.begin(), s.end()), s.end());
  EXPECT_NE(replicate_seed(1, 0), replicate_seed(2, 0));
}
