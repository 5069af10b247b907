#include "fuzzybm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json grid_to_json(const DirectionGrid& grid) {
  return {{"id", grid.id()},
          {"dim", grid.dim()},
          {"count", grid.size()},
          {"seed", grid.seed()},
          {"directions", grid.directions()}};
}

Json body_to_json(const ConvexBody& body) {
  Json j;
  j["dim"] = body.dim();
  j["grid_id"] = body.grid().id();
  j["support"] = std::vector<double>(body.support_values().begin(), body.support_values().end());
  if (body.has_vertices()) j["vertices"] = body.vertices();
  return j;
}

ConvexBody body_from_json(const Json& j) {
  const GridPtr grid = grid_from_id(j.at("grid_id").get<std::string>());
  if (j.at("dim").get<int>() != grid->dim()) throw InvalidArgument("body: dim does not match grid");
  auto support = j.at("support").get<std::vector<double>>();
  if (!j.contains("vertices")) return ConvexBody::from_support(grid, std::move(support));
  ConvexBody body = ConvexBody::from_vertices(grid, j.at("vertices").get<std::vector<Point>>());
  if (support.size() != grid->size()) throw InvalidArgument("body: support length mismatch");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (std::abs(support[i] - body.support(i)) > 1e-12 * std::max(1.0, std::abs(support[i]))) {
      throw InvalidArgument("body: stored support disagrees with vertices");
    }
  }
  return body;
}

Json fuzzy_to_json(const FuzzySet& nu) {
  Json cuts = Json::array();
  for (const auto& c : nu.cuts()) cuts.push_back(body_to_json(c));
  return {{"alpha_levels", nu.alpha_grid().levels()}, {"cuts", std::move(cuts)}};
}

FuzzySet fuzzy_from_json(const Json& j) {
  AlphaGrid ag(j.at("alpha_levels").get<std::vector<double>>());
  std::vector<ConvexBody> cuts;
  for (const auto& c : j.at("cuts")) cuts.push_back(body_from_json(c));
  return make_fuzzy(std::move(ag), std::move(cuts));
}

Json random_set_to_json(const DiscreteRandomFuzzySet& x) {
  Json atoms = Json::array();
  for (std::size_t w = 0; w < x.space().size(); ++w) {
    atoms.push_back({{"id", x.space().ids()[w]},
                     {"weight", x.space().weight(w)},
                     {"fuzzy_set", fuzzy_to_json(x.value(w))}});
  }
  return {{"atoms", std::move(atoms)},
          {"total_mass", x.space().total_mass()},
          {"allow_null_atoms", x.space().allow_null_atoms()}};
}

DiscreteRandomFuzzySet random_set_from_json(const Json& j) {
  std::vector<std::string> ids;
  std::vector<double> weights;
  std::vector<FuzzySet> values;
  for (const auto& a : j.at("atoms")) {
    ids.push_back(a.at("id").get<std::string>());
    weights.push_back(a.at("weight").get<double>());
    values.push_back(fuzzy_from_json(a.at("fuzzy_set")));
  }
  FiniteSpace space(std::move(ids), std::move(weights), j.at("total_mass").get<double>(),
                    j.value("allow_null_atoms", false));
  return DiscreteRandomFuzzySet(std::move(space), std::move(values));
}

Json pettis_to_json(const PettisReport& report) {
  return {{"residuals", report.residuals},
          {"max_residual", report.max_residual},
          {"pass", report.pass}};
}

namespace {

Json optional_time(const std::optional<double>& t) { return t ? Json(*t) : Json(nullptr); }

std::optional<double> read_time(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

Json report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"test", c.test},
                      {"functional", c.functional},
                      {"t", optional_time(c.t)},
                      {"s", optional_time(c.s)},
                      {"estimate", c.result.estimate},
                      {"se", c.result.std_error},
                      {"n", c.result.n_samples},
                      {"ci_level", c.result.ci_level},
                      {"target", c.target},
                      {"residual", std::abs(c.result.estimate - c.target)},
                      {"z", c.z},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"note", v.note}});
  }
  return {{"name", report.name},     {"sampler", report.sampler}, {"seed", report.seed},
          {"z", report.z},           {"pass", report.pass},       {"checks", std::move(checks)},
          {"verdicts", std::move(verdicts)}};
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.name = j.at("name").get<std::string>();
  r.sampler = j.at("sampler").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.z = j.at("z").get<double>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& c : j.at("checks")) {
    CheckEntry e;
    e.test = c.at("test").get<std::string>();
    e.functional = c.at("functional").get<std::string>();
    e.t = read_time(c.at("t"));
    e.s = read_time(c.at("s"));
    e.result = EstimatorResult(c.at("estimate").get<double>(), c.at("se").get<double>(),
                               c.at("n").get<std::size_t>(), c.at("ci_level").get<double>());
    e.target = c.at("target").get<double>();
    e.z = c.at("z").get<double>();
    e.tolerance = c.at("tolerance").get<double>();
    e.pass = c.at("pass").get<bool>();
    r.checks.push_back(std::move(e));
  }
  for (const auto& v : j.at("verdicts")) {
    r.verdicts.push_back(
        {v.at("name").get<std::string>(), v.at("pass").get<bool>(), v.at("note").get<std::string>()});
  }
  return r;
}

void write_surface_csv(std::ostream& out, const SupportSurface& surface) {
  out << "direction_index,alpha,value\n";
  for (std::size_t i = 0; i < surface.rows(); ++i) {
    for (std::size_t j = 0; j < surface.cols(); ++j) {
      out << i << ',' << format_double(surface.alpha_grid().alpha_at(j)) << ','
          << format_double(surface.at(i, j)) << '\n';
    }
  }
}

void write_path_csv(std::ostream& out, const WienerPath& path) {
  const std::size_t dim = path.points.empty() ? 0 : path.points.front().size();
  out << "time";
  for (std::size_t k = 0; k < dim; ++k) out << ",x" << (k + 1);
  out << '\n';
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    out << format_double(path.times[i]);
    for (double c : path.points[i]) out << ',' << format_double(c);
    out << '\n';
  }
}

namespace {

bool identical(const FuzzySet& a, const FuzzySet& b) {
  if (!(a.alpha_grid() == b.alpha_grid()) || !same_grids(a, b)) return false;
  for (std::size_t j = 0; j < a.cuts().size(); ++j) {
    const auto sa = a.cuts()[j].support_values();
    const auto sb = b.cuts()[j].support_values();
    if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) return false;
    if (a.cuts()[j].has_vertices() != b.cuts()[j].has_vertices()) return false;
  }
  return true;
}

}  // namespace

Json fuzzy_path_to_json(const FuzzyProcessPath& path) {
  std::vector<const FuzzySet*> unique;
  std::vector<std::size_t> refs;
  for (const auto& v : path.values) {
    auto it = std::find_if(unique.begin(), unique.end(),
                           [&](const FuzzySet* u) { return identical(*u, v); });
    refs.push_back(static_cast<std::size_t>(it - unique.begin()));
    if (it == unique.end()) unique.push_back(&v);
  }
  Json sets = Json::array();
  for (const FuzzySet* u : unique) sets.push_back(fuzzy_to_json(*u));
  return {{"times", path.times}, {"fuzzy_sets", std::move(sets)}, {"values", refs}};
}

FuzzyProcessPath fuzzy_path_from_json(const Json& j) {
  std::vector<FuzzySet> sets;
  for (const auto& s : j.at("fuzzy_sets")) sets.push_back(fuzzy_from_json(s));
  FuzzyProcessPath path;
  path.times = j.at("times").get<std::vector<double>>();
  const auto refs = j.at("values").get<std::vector<std::size_t>>();
  if (refs.size() != path.times.size()) throw InvalidArgument("fuzzy path: values/times length mismatch");
  for (std::size_t r : refs) {
    if (r >= sets.size()) throw InvalidArgument("fuzzy path: dangling fuzzy set reference");
    path.values.push_back(sets[r]);
  }
  return path;
}

void write_report_csv(std::ostream& out, const VerificationReport& report) {
  out << "test,functional,t,s,estimate,se,target,pass\n";
  for (const auto& c : report.checks) {
    out << c.test << ",\"" << c.functional << "\"," << (c.t ? format_double(*c.t) : "") << ','
        << (c.s ? format_double(*c.s) : "") << ',' << format_double(c.result.estimate) << ','
        << format_double(c.result.std_error) << ',' << format_double(c.target) << ','
        << (c.pass ? "true" : "false") << '\n';
  }
}

}  // namespace fuzzybm
