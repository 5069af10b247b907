#include "fuzzybm/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

AlphaGrid::AlphaGrid(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty() || levels_.front() != 1.0) {
    throw InvalidArgument("AlphaGrid: levels must start at 1");
  }
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (!(levels_[j] > 0.0 && levels_[j] <= 1.0)) {
      throw InvalidArgument("AlphaGrid: levels must lie in (0, 1]");
    }
    if (j > 0 && !(levels_[j] < levels_[j - 1])) {
      throw InvalidArgument("AlphaGrid: levels must be strictly decreasing");
    }
  }
}

AlphaGrid AlphaGrid::uniform(std::size_t k) {
  if (k == 0) throw InvalidArgument("AlphaGrid::uniform: need at least one level");
  std::vector<double> levels(k);
  for (std::size_t j = 0; j < k; ++j) {
    levels[j] = static_cast<double>(k - j) / static_cast<double>(k);
  }
  return AlphaGrid(std::move(levels));
}

double AlphaGrid::alpha_at(std::size_t slot) const {
  if (slot > levels_.size()) throw InvalidArgument("AlphaGrid: slot out of range");
  return slot == levels_.size() ? 0.0 : levels_[slot];
}

std::size_t AlphaGrid::slot_of(double alpha) const {
  if (alpha == 0.0) return support_slot();
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (levels_[j] == alpha) return j;
  }
  std::ostringstream os;
  os << "alpha " << alpha << " is not a level of the grid (no interpolation)";
  throw InvalidArgument(os.str());
}

FuzzySet::FuzzySet(AlphaGrid alpha_grid, std::vector<ConvexBody> cuts)
    : alpha_grid_(std::move(alpha_grid)), cuts_(std::move(cuts)) {
  if (cuts_.size() != alpha_grid_.slot_count()) {
    throw InvalidArgument("make_fuzzy: expected " + std::to_string(alpha_grid_.slot_count()) +
                          " cuts (levels plus 0+), got " + std::to_string(cuts_.size()));
  }
  for (const auto& c : cuts_) {
    if (!same_grid(c, cuts_.front())) {
      throw InvalidArgument("make_fuzzy: cuts use different direction grids");
    }
  }
  if (!is_nested(*this)) {
    throw InvalidArgument("make_fuzzy: cuts are not nested (cut(a) must contain cut(b) for a <= b)");
  }
}

const ConvexBody& FuzzySet::cut_at_slot(std::size_t slot) const {
  if (slot >= cuts_.size()) throw InvalidArgument("cut: slot out of range");
  return cuts_[slot];
}

bool is_nested(const FuzzySet& nu, double tol) {
  const auto& cuts = nu.cuts();
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const auto inner = cuts[j].support_values();
    const auto outer = cuts[j + 1].support_values();
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const double slack = tol * std::max({1.0, std::abs(inner[i]), std::abs(outer[i])});
      if (inner[i] > outer[i] + slack) return false;
    }
  }
  return true;
}

FuzzySet make_fuzzy(AlphaGrid alpha_grid, std::vector<ConvexBody> cuts) {
  return FuzzySet(std::move(alpha_grid), std::move(cuts));
}

FuzzySet indicator(GridPtr grid, const AlphaGrid& alpha_grid, const Point& a) {
  return crisp(alpha_grid, ConvexBody::singleton(std::move(grid), a));
}

FuzzySet crisp(const AlphaGrid& alpha_grid, const ConvexBody& body) {
  return FuzzySet(alpha_grid, std::vector<ConvexBody>(alpha_grid.slot_count(), body));
}

FuzzySet triangular_number(GridPtr grid, const AlphaGrid& alpha_grid, double lo, double peak,
                           double hi) {
  if (grid->dim() != 1) throw InvalidArgument("triangular_number: needs a grid in R^1");
  if (!(lo <= peak && peak <= hi)) throw InvalidArgument("triangular_number: need lo <= peak <= hi");
  std::vector<ConvexBody> cuts;
  for (std::size_t slot = 0; slot < alpha_grid.slot_count(); ++slot) {
    const double a = alpha_grid.alpha_at(slot);
    cuts.push_back(ConvexBody::from_vertices(grid, {{lo + a * (peak - lo)}, {hi - a * (hi - peak)}}));
  }
  return FuzzySet(alpha_grid, std::move(cuts));
}

bool same_grids(const FuzzySet& a, const FuzzySet& b) {
  return a.alpha_grid() == b.alpha_grid() && same_grid(a.support_set(), b.support_set());
}

namespace {

void require_same_grids(const FuzzySet& a, const FuzzySet& b, const char* op) {
  if (!same_grids(a, b)) throw InvalidArgument(std::string(op) + ": fuzzy sets use different grids");
}

}  // namespace

FuzzySet fuzzy_sum(const FuzzySet& a, const FuzzySet& b) {
  require_same_grids(a, b, "fuzzy_sum");
  std::vector<ConvexBody> cuts;
  cuts.reserve(a.cuts().size());
  for (std::size_t j = 0; j < a.cuts().size(); ++j) {
    cuts.push_back(minkowski_sum(a.cuts()[j], b.cuts()[j]));
  }
  return FuzzySet(a.alpha_grid(), std::move(cuts));
}

FuzzySet fuzzy_scale(double lambda, const FuzzySet& a) {
  std::vector<ConvexBody> cuts;
  cuts.reserve(a.cuts().size());
  for (const auto& c : a.cuts()) cuts.push_back(scale(lambda, c));
  return FuzzySet(a.alpha_grid(), std::move(cuts));
}

const ConvexBody& cut(const FuzzySet& nu, double alpha) {
  return nu.cut_at_slot(nu.alpha_grid().slot_of(alpha));
}

double d_infinity(const FuzzySet& a, const FuzzySet& b) {
  require_same_grids(a, b, "d_infinity");
  double best = 0.0;
  for (std::size_t j = 0; j < a.cuts().size(); ++j) {
    best = std::max(best, hausdorff(a.cuts()[j], b.cuts()[j]));
  }
  return best;
}

SupportSurface::SupportSurface(GridPtr grid, AlphaGrid alpha_grid, std::vector<double> values)
    : grid_(std::move(grid)), alpha_grid_(std::move(alpha_grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("SupportSurface: null grid");
  if (values_.size() != rows() * cols()) {
    throw InvalidArgument("SupportSurface: expected " + std::to_string(rows() * cols()) + " values");
  }
}

SupportSurface SupportSurface::zero(GridPtr grid, AlphaGrid alpha_grid) {
  const std::size_t n = grid->size() * alpha_grid.slot_count();
  return SupportSurface(std::move(grid), std::move(alpha_grid), std::vector<double>(n, 0.0));
}

double SupportSurface::at(std::size_t direction, std::size_t slot) const {
  if (direction >= rows() || slot >= cols()) {
    throw InvalidArgument("SupportSurface: index (" + std::to_string(direction) + ", " +
                          std::to_string(slot) + ") out of range");
  }
  return values_[direction * cols() + slot];
}

double SupportSurface::sup_norm() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

bool SupportSurface::is_embedding_candidate() const {
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      const double v = values_[i * cols() + j];
      if (!std::isfinite(v)) return false;
      // Slots run from alpha = 1 down to 0+, so values must not decrease.
      if (j > 0 && v < values_[i * cols() + j - 1]) return false;
    }
  }
  return true;
}

void SupportSurface::require_compatible(const SupportSurface& other) const {
  if (!(*grid_ == *other.grid_) || !(alpha_grid_ == other.alpha_grid_)) {
    throw InvalidArgument("SupportSurface: grid mismatch");
  }
}

SupportSurface& SupportSurface::operator+=(const SupportSurface& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

SupportSurface& SupportSurface::operator-=(const SupportSurface& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

SupportSurface& SupportSurface::operator*=(double lambda) {
  for (auto& v : values_) v *= lambda;
  return *this;
}

SupportSurface operator+(SupportSurface a, const SupportSurface& b) { return a += b; }
SupportSurface operator-(SupportSurface a, const SupportSurface& b) { return a -= b; }
SupportSurface operator*(double lambda, SupportSurface a) { return a *= lambda; }

SupportSurface embed(const FuzzySet& nu) {
  const std::size_t rows = nu.grid().size();
  const std::size_t cols = nu.alpha_grid().slot_count();
  std::vector<double> values(rows * cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const auto s = nu.cuts()[j].support_values();
    for (std::size_t i = 0; i < rows; ++i) values[i * cols + j] = s[i];
  }
  return SupportSurface(nu.grid_ptr(), nu.alpha_grid(), std::move(values));
}

GridFunctional::GridFunctional(std::vector<Term> terms) : terms_(std::move(terms)) {
  const bool any_nonzero =
      std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.weight != 0.0; });
  if (!any_nonzero) throw InvalidArgument("GridFunctional: needs at least one nonzero weight");
  for (const auto& t : terms_) {
    if (!std::isfinite(t.weight)) throw InvalidArgument("GridFunctional: non-finite weight");
  }
}

GridFunctional GridFunctional::point_evaluation(std::size_t direction, std::size_t slot) {
  return GridFunctional({Term{direction, slot, 1.0}});
}

double GridFunctional::weight_l1() const {
  double total = 0.0;
  for (const auto& t : terms_) total += std::abs(t.weight);
  return total;
}

std::string GridFunctional::label() const {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k > 0) os << "+";
    if (terms_[k].weight != 1.0) os << terms_[k].weight << "*";
    os << "phi[u" << terms_[k].direction << ",j" << terms_[k].slot << "]";
  }
  return os.str();
}

double apply_functional(const GridFunctional& f, const SupportSurface& s) {
  double total = 0.0;
  for (const auto& t : f.terms()) total += t.weight * s.at(t.direction, t.slot);
  return total;
}

}  // namespace fuzzybm
