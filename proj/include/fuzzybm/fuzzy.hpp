#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fuzzybm/geometry.hpp"

namespace fuzzybm {

/// Finite descending list of membership levels 1 = a_1 > a_2 > ... > a_K > 0,
/// plus a trailing slot for the support set (the 0+ cut). Slot j < K is level
/// a_{j+1}; slot K is 0+, addressed with alpha = 0.
class AlphaGrid {
 public:
  explicit AlphaGrid(std::vector<double> levels);

  // K levels evenly spaced 1, 1 - 1/K, ..., 1/K.
  static AlphaGrid uniform(std::size_t k);

  std::size_t level_count() const { return levels_.size(); }
  std::size_t slot_count() const { return levels_.size() + 1; }
  std::size_t support_slot() const { return levels_.size(); }
  const std::vector<double>& levels() const { return levels_; }

  // Level value of a slot; 0 for the 0+ slot.
  double alpha_at(std::size_t slot) const;
  // Exact lookup; alpha = 0 selects the 0+ slot. Off-grid values throw.
  std::size_t slot_of(double alpha) const;

  bool operator==(const AlphaGrid& other) const { return levels_ == other.levels_; }

 private:
  std::vector<double> levels_;
};

// Relative slack for nestedness certificates. Cuts built from vertex sums are
// re-derived from hulls, so equal supports can differ in the last ulp.
inline constexpr double kNestingTolerance = 1e-12;

/// Convex fuzzy set with compact support, represented by its alpha-cuts on an
/// AlphaGrid. Construction validates that cuts are nested.
class FuzzySet {
 public:
  FuzzySet(AlphaGrid alpha_grid, std::vector<ConvexBody> cuts);

  const AlphaGrid& alpha_grid() const { return alpha_grid_; }
  const std::vector<ConvexBody>& cuts() const { return cuts_; }
  const ConvexBody& cut_at_slot(std::size_t slot) const;
  const ConvexBody& support_set() const { return cuts_.back(); }

  const DirectionGrid& grid() const { return cuts_.front().grid(); }
  const GridPtr& grid_ptr() const { return cuts_.front().grid_ptr(); }
  int dim() const { return grid().dim(); }

 private:
  AlphaGrid alpha_grid_;
  std::vector<ConvexBody> cuts_;
};

// Cuts ordered by slot: level 1 first, 0+ last.
FuzzySet make_fuzzy(AlphaGrid alpha_grid, std::vector<ConvexBody> cuts);

FuzzySet indicator(GridPtr grid, const AlphaGrid& alpha_grid, const Point& a);
// Same body at every level.
FuzzySet crisp(const AlphaGrid& alpha_grid, const ConvexBody& body);
// Triangular fuzzy number on R^1: cut(a) = [lo + a (peak - lo), hi - a (hi - peak)].
FuzzySet triangular_number(GridPtr grid, const AlphaGrid& alpha_grid, double lo, double peak,
                           double hi);

bool same_grids(const FuzzySet& a, const FuzzySet& b);

FuzzySet fuzzy_sum(const FuzzySet& a, const FuzzySet& b);
FuzzySet fuzzy_scale(double lambda, const FuzzySet& a);

const ConvexBody& cut(const FuzzySet& nu, double alpha);

// max over levels (0+ included) of the levelwise grid Hausdorff distance.
double d_infinity(const FuzzySet& a, const FuzzySet& b);

// Checks nestedness of every consecutive pair of cuts.
bool is_nested(const FuzzySet& nu, double tol = kNestingTolerance);

/// Grid restriction of a function (x, alpha) -> s(x, alpha): one row per
/// direction, one column per alpha slot. Arbitrary surfaces are allowed; the
/// embedded image of fuzzy sets is the subset passing `is_embedding_candidate`.
class SupportSurface {
 public:
  SupportSurface(GridPtr grid, AlphaGrid alpha_grid, std::vector<double> values);
  static SupportSurface zero(GridPtr grid, AlphaGrid alpha_grid);

  const DirectionGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const AlphaGrid& alpha_grid() const { return alpha_grid_; }
  std::size_t rows() const { return grid_->size(); }
  std::size_t cols() const { return alpha_grid_.slot_count(); }

  double at(std::size_t direction, std::size_t slot) const;
  std::span<const double> values() const { return values_; }

  double sup_norm() const;
  // Necessary conditions for lying in the image of `embed`: finite and
  // nonincreasing in alpha for every direction.
  bool is_embedding_candidate() const;

  SupportSurface& operator+=(const SupportSurface& other);
  SupportSurface& operator-=(const SupportSurface& other);
  SupportSurface& operator*=(double lambda);

 private:
  void require_compatible(const SupportSurface& other) const;

  GridPtr grid_;
  AlphaGrid alpha_grid_;
  std::vector<double> values_;
};

SupportSurface operator+(SupportSurface a, const SupportSurface& b);
SupportSurface operator-(SupportSurface a, const SupportSurface& b);
SupportSurface operator*(double lambda, SupportSurface a);

SupportSurface embed(const FuzzySet& nu);

/// Finite linear combination of point evaluations s -> s(u_i, a_j).
class GridFunctional {
 public:
  struct Term {
    std::size_t direction;
    std::size_t slot;
    double weight;
  };

  explicit GridFunctional(std::vector<Term> terms);
  static GridFunctional point_evaluation(std::size_t direction, std::size_t slot);

  const std::vector<Term>& terms() const { return terms_; }
  double weight_l1() const;
  bool is_point_evaluation() const { return terms_.size() == 1 && terms_[0].weight == 1.0; }
  std::string label() const;

 private:
  std::vector<Term> terms_;
};

double apply_functional(const GridFunctional& f, const SupportSurface& s);

}  // namespace fuzzybm
