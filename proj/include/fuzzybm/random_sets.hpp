#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/geometry.hpp"

namespace fuzzybm {

// Membership slack for selection certificates <u_i, x> <= s(u_i) + tol.
inline constexpr double kMembershipTolerance = 1e-9;
// Grid diameter below which a cut counts as a singleton.
inline constexpr double kSingletonTolerance = 1e-9;
// Coordinate difference below which two selection values are equal.
inline constexpr double kSelectionEqualityTolerance = 1e-12;

/// Finite measure space: atom ids with strictly positive weights summing to
/// `total_mass`. Zero weights are accepted only when `allow_null_atoms` is set,
/// which is how almost-everywhere statements are exercised.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> ids, std::vector<double> weights, double total_mass = 1.0,
              bool allow_null_atoms = false);

  // n atoms "w0".."w{n-1}" of weight total_mass / n.
  static FiniteSpace uniform(std::size_t n, double total_mass = 1.0);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t atom) const { return weights_.at(atom); }
  double total_mass() const { return total_mass_; }
  bool allow_null_atoms() const { return allow_null_atoms_; }
  double measure(const std::vector<std::size_t>& atoms) const;

  bool operator==(const FiniteSpace& other) const {
    return ids_ == other.ids_ && weights_ == other.weights_ && total_mass_ == other.total_mass_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<double> weights_;
  double total_mass_;
  bool allow_null_atoms_;
};

/// Fuzzy set-valued random variable on a finite space: one FuzzySet per atom,
/// all on shared grids.
class DiscreteRandomFuzzySet {
 public:
  DiscreteRandomFuzzySet(FiniteSpace space, std::vector<FuzzySet> values);

  const FiniteSpace& space() const { return space_; }
  const std::vector<FuzzySet>& values() const { return values_; }
  const FuzzySet& value(std::size_t atom) const { return values_.at(atom); }
  int dim() const { return values_.front().dim(); }
  const AlphaGrid& alpha_grid() const { return values_.front().alpha_grid(); }

  // max_w ||X(w)_{0+}||_H, finite by construction.
  double integrable_bound() const;

 private:
  FiniteSpace space_;
  std::vector<FuzzySet> values_;
};

// One point per atom.
using Selection = std::vector<Point>;

// Grid-level certificate that sel(w) lies in X(w)_alpha for every atom.
bool is_selection(const DiscreteRandomFuzzySet& x, double alpha, const Selection& sel,
                  double tol = kMembershipTolerance);

// Bochner integral sum_w mu(w) sel(w).
Point selection_integral(const FiniteSpace& space, const Selection& sel);

// Levelwise weighted Minkowski sum sum_w mu(w) X(w)_alpha.
FuzzySet aumann_expectation(const DiscreteRandomFuzzySet& x);

/// Linear functional x -> <coefficients, x> on R^d.
struct LinearFunctional {
  Point coefficients;

  double operator()(const Point& x) const { return dot(coefficients, x); }
  LinearFunctional negated() const;
};

// Axis duals e_1*..e_d* followed by count - dim quasi-uniform unit functionals.
std::vector<LinearFunctional> separating_family(int dim, std::size_t count);

struct Separator {
  LinearFunctional functional;
  std::vector<std::size_t> atoms;  // A_phi = {w : phi(x1(w)) > phi(x2(w))}
  double measure;
};

// Scans the family and its negations (phi before -phi) for a functional whose
// strict-domination set has positive measure. Empty iff the selections agree
// on every positive-weight atom up to kSelectionEqualityTolerance.
std::optional<Separator> find_separator(const Selection& x1, const Selection& x2,
                                        const FiniteSpace& space,
                                        const std::vector<LinearFunctional>& family);
std::optional<Separator> find_separator(const Selection& x1, const Selection& x2,
                                        const FiniteSpace& space);

inline constexpr std::size_t kDefaultSelectionCap = 1'000'000;

/// Enumerates every selection that picks a vertex of X(w)_alpha per atom, in
/// odometer order (last atom varies fastest).
class SelectionEnumerator {
 public:
  SelectionEnumerator(const DiscreteRandomFuzzySet& x, double alpha,
                      std::size_t cap = kDefaultSelectionCap);

  std::size_t count() const { return count_; }
  // Writes the next selection into `out`; false once exhausted.
  bool next(Selection& out);
  void for_each(const std::function<void(const Selection&)>& visit);

 private:
  std::vector<const std::vector<Point>*> vertex_lists_;
  std::vector<std::size_t> odometer_;
  std::size_t count_ = 1;
  bool done_ = false;
};

SelectionEnumerator extreme_selections(const DiscreteRandomFuzzySet& x, double alpha,
                                       std::size_t cap = kDefaultSelectionCap);

struct SingletonWitness {
  bool singleton = false;
  // True case: the a.e. singleton selection.
  Selection selection;
  // False case: an atom with a fat cut and two selections that agree elsewhere
  // and are separated there.
  std::optional<std::size_t> atom;
  Selection first;
  Selection second;
  std::optional<Separator> separator;
  double integral_gap = 0.0;  // |phi(int first) - phi(int second)| for the separator
};

// True iff every positive-weight atom's alpha-cut has grid diameter <= tol.
SingletonWitness is_singleton_ae(const DiscreteRandomFuzzySet& x, double alpha,
                                 double tol = kSingletonTolerance);

struct PettisReport {
  std::vector<double> residuals;  // |sum_w mu(w) phi(x(w)) - phi(a)| per functional
  double max_residual = 0.0;
  bool pass = false;
};

// Requires singleton alpha-cuts everywhere.
PettisReport pettis_check(const DiscreteRandomFuzzySet& x, double alpha, const Point& a,
                          const std::vector<LinearFunctional>& family, double tol = 1e-9);

}  // namespace fuzzybm
