#include "fuzzybm/random_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

FiniteSpace::FiniteSpace(std::vector<std::string> ids, std::vector<double> weights,
                         double total_mass, bool allow_null_atoms)
    : ids_(std::move(ids)),
      weights_(std::move(weights)),
      total_mass_(total_mass),
      allow_null_atoms_(allow_null_atoms) {
  if (ids_.empty()) throw InvalidArgument("FiniteSpace: needs at least one atom");
  if (ids_.size() != weights_.size()) throw InvalidArgument("FiniteSpace: ids and weights differ in length");
  if (!(total_mass_ > 0.0) || !std::isfinite(total_mass_)) {
    throw InvalidArgument("FiniteSpace: total mass must be positive");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0 || (w == 0.0 && !allow_null_atoms_)) {
      throw InvalidArgument("FiniteSpace: weights must be positive (null atoms need the extension flag)");
    }
    sum += w;
  }
  if (std::abs(sum - total_mass_) > 1e-12 * std::max(1.0, total_mass_)) {
    throw InvalidArgument("FiniteSpace: weights do not sum to the declared total mass");
  }
}

FiniteSpace FiniteSpace::uniform(std::size_t n, double total_mass) {
  std::vector<std::string> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = "w" + std::to_string(k);
  return FiniteSpace(std::move(ids), std::vector<double>(n, total_mass / static_cast<double>(n)),
                     total_mass);
}

double FiniteSpace::measure(const std::vector<std::size_t>& atoms) const {
  double m = 0.0;
  for (auto a : atoms) m += weights_.at(a);
  return m;
}

DiscreteRandomFuzzySet::DiscreteRandomFuzzySet(FiniteSpace space, std::vector<FuzzySet> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw InvalidArgument("DiscreteRandomFuzzySet: need one fuzzy set per atom");
  }
  for (const auto& v : values_) {
    if (!same_grids(v, values_.front())) {
      throw InvalidArgument("DiscreteRandomFuzzySet: values use different grids");
    }
  }
}

double DiscreteRandomFuzzySet::integrable_bound() const {
  double best = 0.0;
  for (const auto& v : values_) best = std::max(best, norm(v.support_set()));
  return best;
}

bool is_selection(const DiscreteRandomFuzzySet& x, double alpha, const Selection& sel, double tol) {
  if (sel.size() != x.space().size()) throw InvalidArgument("is_selection: one point per atom required");
  for (std::size_t w = 0; w < sel.size(); ++w) {
    const auto& body = cut(x.value(w), alpha);
    const auto& grid = body.grid();
    if (static_cast<int>(sel[w].size()) != grid.dim()) {
      throw InvalidArgument("is_selection: point dimension mismatch");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (dot(grid.direction(i), sel[w]) > body.support_values()[i] + tol) return false;
    }
  }
  return true;
}

Point selection_integral(const FiniteSpace& space, const Selection& sel) {
  if (sel.size() != space.size()) throw InvalidArgument("selection_integral: one point per atom required");
  Point total(sel.front().size(), 0.0);
  for (std::size_t w = 0; w < sel.size(); ++w) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += space.weight(w) * sel[w][k];
  }
  return total;
}

FuzzySet aumann_expectation(const DiscreteRandomFuzzySet& x) {
  const auto& space = x.space();
  std::vector<ConvexBody> cuts;
  cuts.reserve(x.alpha_grid().slot_count());
  for (std::size_t slot = 0; slot < x.alpha_grid().slot_count(); ++slot) {
    std::optional<ConvexBody> acc;
    for (std::size_t w = 0; w < space.size(); ++w) {
      ConvexBody term = scale(space.weight(w), x.value(w).cut_at_slot(slot));
      acc = acc ? minkowski_sum(*acc, term) : std::move(term);
    }
    cuts.push_back(std::move(*acc));
  }
  return FuzzySet(x.alpha_grid(), std::move(cuts));
}

LinearFunctional LinearFunctional::negated() const {
  LinearFunctional out{coefficients};
  for (auto& c : out.coefficients) c = -c;
  return out;
}

std::vector<LinearFunctional> separating_family(int dim, std::size_t count) {
  if (dim < 1) throw InvalidArgument("separating_family: dim must be positive");
  if (count < static_cast<std::size_t>(dim)) {
    throw InvalidArgument("separating_family: count must be at least dim");
  }
  std::vector<LinearFunctional> family;
  family.reserve(count);
  if (dim == 1) {
    if (count != 1) throw InvalidArgument("separating_family: R^1 has a single unit dual up to sign");
    family.push_back({{1.0}});
    return family;
  }
  // Positive members of a direction grid: axes and one of each generated pair.
  const std::size_t extras = count - static_cast<std::size_t>(dim);
  const auto grid = make_direction_grid(dim, static_cast<std::size_t>(2 * dim) + 2 * extras, 0);
  for (int k = 0; k < dim; ++k) family.push_back({grid->direction(grid->axis_index(k, true))});
  for (std::size_t e = 0; e < extras; ++e) {
    family.push_back({grid->direction(static_cast<std::size_t>(2 * dim) + 2 * e)});
  }
  return family;
}

std::optional<Separator> find_separator(const Selection& x1, const Selection& x2,
                                        const FiniteSpace& space,
                                        const std::vector<LinearFunctional>& family) {
  if (x1.size() != space.size() || x2.size() != space.size()) {
    throw InvalidArgument("find_separator: selections are not defined on this space");
  }
  for (const auto& phi : family) {
    for (const auto& candidate : {phi, phi.negated()}) {
      Separator sep{candidate, {}, 0.0};
      for (std::size_t w = 0; w < space.size(); ++w) {
        if (space.weight(w) == 0.0) continue;
        if (candidate(x1[w]) - candidate(x2[w]) > kSelectionEqualityTolerance) sep.atoms.push_back(w);
      }
      sep.measure = space.measure(sep.atoms);
      if (sep.measure > 0.0) return sep;
    }
  }
  return std::nullopt;
}

std::optional<Separator> find_separator(const Selection& x1, const Selection& x2,
                                        const FiniteSpace& space) {
  if (x1.empty()) throw InvalidArgument("find_separator: empty selection");
  const int dim = static_cast<int>(x1.front().size());
  return find_separator(x1, x2, space, separating_family(dim, static_cast<std::size_t>(dim)));
}

SelectionEnumerator::SelectionEnumerator(const DiscreteRandomFuzzySet& x, double alpha,
                                         std::size_t cap) {
  for (std::size_t w = 0; w < x.space().size(); ++w) {
    const auto& body = cut(x.value(w), alpha);
    if (!body.has_vertices()) throw Unsupported("extreme_selections: cut without vertex list");
    vertex_lists_.push_back(&body.vertices());
    const std::size_t n = body.vertices().size();
    if (count_ > cap / n) {
      throw ResourceLimit("extreme_selections: selection count exceeds cap " + std::to_string(cap));
    }
    count_ *= n;
  }
  odometer_.assign(vertex_lists_.size(), 0);
}

bool SelectionEnumerator::next(Selection& out) {
  if (done_) return false;
  out.resize(vertex_lists_.size());
  for (std::size_t w = 0; w < vertex_lists_.size(); ++w) out[w] = (*vertex_lists_[w])[odometer_[w]];
  std::size_t w = vertex_lists_.size();
  while (w-- > 0) {
    if (++odometer_[w] < vertex_lists_[w]->size()) return true;
    odometer_[w] = 0;
  }
  done_ = true;
  return true;
}

void SelectionEnumerator::for_each(const std::function<void(const Selection&)>& visit) {
  Selection sel;
  while (next(sel)) visit(sel);
}

SelectionEnumerator extreme_selections(const DiscreteRandomFuzzySet& x, double alpha,
                                       std::size_t cap) {
  return SelectionEnumerator(x, alpha, cap);
}

namespace {

// Point of `body` maximizing <u_i, .>: a vertex when available, otherwise the
// midpoint pushed by half the width (exact for balls).
Point extreme_point(const ConvexBody& body, std::size_t i) {
  const Point& u = body.grid().direction(i);
  if (body.has_vertices()) {
    const auto& vs = body.vertices();
    return *std::max_element(vs.begin(), vs.end(),
                             [&](const Point& a, const Point& b) { return dot(u, a) < dot(u, b); });
  }
  Point p = body.representative_point();
  const double shift = body.support(i) - dot(u, p);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] += shift * u[k];
  return p;
}

}  // namespace

SingletonWitness is_singleton_ae(const DiscreteRandomFuzzySet& x, double alpha, double tol) {
  const auto& space = x.space();
  SingletonWitness witness;
  Selection base(space.size());
  std::optional<std::size_t> fat_atom;
  for (std::size_t w = 0; w < space.size(); ++w) {
    const auto& body = cut(x.value(w), alpha);
    base[w] = body.representative_point();
    if (space.weight(w) > 0.0 && !fat_atom && body.grid_diameter() > tol) fat_atom = w;
  }
  if (!fat_atom) {
    witness.singleton = true;
    witness.selection = std::move(base);
    return witness;
  }

  const auto& body = cut(x.value(*fat_atom), alpha);
  std::size_t widest = 0;
  for (std::size_t i = 0; i < body.grid().size(); ++i) {
    if (body.width(i) > body.width(widest)) widest = i;
  }
  witness.atom = fat_atom;
  witness.first = base;
  witness.second = base;
  witness.first[*fat_atom] = extreme_point(body, widest);
  witness.second[*fat_atom] = extreme_point(body, body.grid().antipode(widest));
  witness.separator = find_separator(witness.first, witness.second, space);
  if (witness.separator) {
    const auto& phi = witness.separator->functional;
    witness.integral_gap = std::abs(phi(selection_integral(space, witness.first)) -
                                    phi(selection_integral(space, witness.second)));
  }
  return witness;
}

PettisReport pettis_check(const DiscreteRandomFuzzySet& x, double alpha, const Point& a,
                          const std::vector<LinearFunctional>& family, double tol) {
  const auto& space = x.space();
  Selection sel(space.size());
  for (std::size_t w = 0; w < space.size(); ++w) {
    const auto& body = cut(x.value(w), alpha);
    if (body.grid_diameter() > kSingletonTolerance) {
      throw InvalidArgument("pettis_check: value at atom " + space.ids()[w] + " is not a singleton");
    }
    sel[w] = body.representative_point();
  }
  PettisReport report;
  for (const auto& phi : family) {
    double integral = 0.0;
    for (std::size_t w = 0; w < space.size(); ++w) integral += space.weight(w) * phi(sel[w]);
    const double r = std::abs(integral - phi(a));
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.pass = report.max_residual <= tol;
  return report;
}

}  // namespace fuzzybm
