#include "fuzzybm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

Json config_to_json(const RunConfig& c) {
  Json sampler = {{"kind", c.sampler.kind},
                  {"lambda", c.sampler.lambda},
                  {"t0", c.sampler.t0},
                  {"shift_mode", c.sampler.shift_mode},
                  {"variant", c.sampler.variant}};
  if (!c.sampler.nu.is_null()) sampler["nu"] = c.sampler.nu;
  return {{"dim", c.dim},
          {"direction_count", c.direction_count},
          {"grid_seed", c.grid_seed},
          {"alpha_levels", c.alpha_levels},
          {"times", c.times},
          {"N", c.samples},
          {"seed", c.seed},
          {"sigma2", c.sigma2},
          {"workers", c.workers},
          {"functional_count", c.functional_count},
          {"covariance_triples", c.covariance_triples},
          {"cross_pairs", c.cross_pairs},
          {"z", c.z},
          {"detector_atoms", c.detector_atoms},
          {"paths", c.paths},
          {"sampler", std::move(sampler)},
          {"output", {{"dir", c.output.dir}, {"format", c.output.format}}},
          {"reports", c.reports}};
}

namespace {

// Reads the keys of one JSON object, remembering which were consumed so the
// leftovers can be reported.
class Reader {
 public:
  Reader(const Json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) fail("expected an object");
  }

  void unsigned_int(const char* key, std::uint64_t& out) {
    if (const Json* v = take(key)) {
      if (!v->is_number_unsigned()) fail(std::string(key) + " must be a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  template <class T>
  void count(const char* key, T& out) {
    std::uint64_t v = out;
    unsigned_int(key, v);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) fail(std::string(key) + " is too large");
    out = static_cast<T>(v);
  }
  void number(const char* key, double& out) {
    if (const Json* v = take(key)) {
      if (!v->is_number()) fail(std::string(key) + " must be a number");
      out = v->get<double>();
    }
  }
  void numbers(const char* key, std::vector<double>& out) {
    if (const Json* v = take(key)) {
      if (!v->is_array()) fail(std::string(key) + " must be an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) fail(std::string(key) + " must be an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }
  void string(const char* key, std::string& out) {
    if (const Json* v = take(key)) {
      if (!v->is_string()) fail(std::string(key) + " must be a string");
      out = v->get<std::string>();
    }
  }
  void strings(const char* key, std::vector<std::string>& out) {
    if (const Json* v = take(key)) {
      if (!v->is_array()) fail(std::string(key) + " must be an array of strings");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_string()) fail(std::string(key) + " must be an array of strings");
        out.push_back(e.get<std::string>());
      }
    }
  }
  const Json* take(const char* key) {
    used_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) fail("unknown key '" + key + "'");
    }
  }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(where_ + ": " + what); }

 private:
  const Json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

}  // namespace

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  Reader r(j, "config");
  std::uint64_t dim = static_cast<std::uint64_t>(c.dim);
  r.unsigned_int("dim", dim);
  if (dim < 1 || dim > 64) r.fail("dim must be in 1..64");
  c.dim = static_cast<int>(dim);
  r.count("direction_count", c.direction_count);
  r.unsigned_int("grid_seed", c.grid_seed);
  r.numbers("alpha_levels", c.alpha_levels);
  r.numbers("times", c.times);
  r.count("N", c.samples);
  r.unsigned_int("seed", c.seed);
  r.number("sigma2", c.sigma2);
  r.count("workers", c.workers);
  r.count("functional_count", c.functional_count);
  r.count("covariance_triples", c.covariance_triples);
  r.count("cross_pairs", c.cross_pairs);
  r.number("z", c.z);
  r.count("detector_atoms", c.detector_atoms);
  r.count("paths", c.paths);
  if (const Json* s = r.take("sampler")) {
    Reader rs(*s, "config.sampler");
    rs.string("kind", c.sampler.kind);
    if (const Json* nu = rs.take("nu")) c.sampler.nu = *nu;
    rs.number("lambda", c.sampler.lambda);
    rs.number("t0", c.sampler.t0);
    rs.string("shift_mode", c.sampler.shift_mode);
    rs.string("variant", c.sampler.variant);
    rs.finish();
  }
  if (const Json* o = r.take("output")) {
    Reader ro(*o, "config.output");
    ro.string("dir", c.output.dir);
    ro.string("format", c.output.format);
    ro.finish();
  }
  r.strings("reports", c.reports);
  r.finish();
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

GridPtr config_grid(const RunConfig& c) {
  return make_direction_grid(c.dim, c.direction_count, c.grid_seed);
}

AlphaGrid config_alpha_grid(const RunConfig& c) { return AlphaGrid(c.alpha_levels); }

FuzzySet build_nu(const Json& spec, const GridPtr& grid, const AlphaGrid& ag) {
  if (!spec.is_object() || !spec.contains("type")) {
    throw ConfigError("sampler.nu must be an object with a 'type'");
  }
  const std::string type = spec.at("type").get<std::string>();
  const auto point = [&](const char* key) {
    Point p = spec.at(key).get<Point>();
    if (p.size() != static_cast<std::size_t>(grid->dim())) {
      throw ConfigError(std::string("sampler.nu.") + key + " has the wrong dimension");
    }
    return p;
  };
  if (type == "indicator") return indicator(grid, ag, point("point"));
  if (type == "box") return crisp(ag, ConvexBody::box(grid, point("lo"), point("hi")));
  if (type == "fuzzy_set") {
    FuzzySet nu = fuzzy_from_json(spec.at("value"));
    if (!(nu.grid() == *grid) || !(nu.alpha_grid() == ag)) {
      throw ConfigError("sampler.nu.value must use the configured grids");
    }
    return nu;
  }
  throw ConfigError("unknown sampler.nu.type '" + type + "'");
}

std::vector<double> base_horizon(const RunConfig& c) {
  std::vector<double> h = {0.0};
  const auto& s = c.sampler;
  if (s.kind == "shift") h.push_back(s.t0);
  for (double t : c.times) {
    if (s.kind == "shift") {
      h.push_back(t + s.t0);
    } else if (s.kind == "rescale") {
      h.push_back(s.lambda * t);
    } else if (s.kind == "time_inversion") {
      h.push_back(s.variant == "reciprocal" ? 1.0 / t : 1.0 / std::sqrt(t));
    } else {
      h.push_back(t);
    }
  }
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

SamplerPtr build_sampler(const RunConfig& c) {
  const GridPtr grid = config_grid(c);
  const AlphaGrid ag = config_alpha_grid(c);
  BrownianOptions bm{grid, ag, base_horizon(c), c.sigma2};
  const auto& s = c.sampler;
  if (s.kind != "translate" && !s.nu.is_null()) throw ConfigError("sampler.nu is only used by translate");
  if (s.kind == "bm") return brownian_sampler(bm);
  if (s.kind == "constant") return constant_sampler(grid, ag, bm.times);
  if (s.kind == "translate") {
    if (s.nu.is_null()) throw ConfigError("translate needs sampler.nu");
    return counterexample_generator(build_nu(s.nu, grid, ag), c.seed, bm.times, c.sigma2);
  }
  if (s.kind == "rescale") return transformed_sampler(brownian_sampler(bm), Rescale{s.lambda});
  if (s.kind == "shift") {
    ShiftMode mode;
    if (s.shift_mode == "increment") {
      mode = ShiftMode::increment;
    } else if (s.shift_mode == "raw") {
      mode = ShiftMode::raw;
    } else {
      throw ConfigError("sampler.shift_mode must be increment or raw");
    }
    return transformed_sampler(brownian_sampler(bm), Shift{s.t0, mode});
  }
  if (s.kind == "time_inversion") {
    InversionVariant v;
    if (s.variant == "reciprocal") {
      v = InversionVariant::reciprocal;
    } else if (s.variant == "reciprocal_sqrt") {
      v = InversionVariant::reciprocal_sqrt;
    } else {
      throw ConfigError("sampler.variant must be reciprocal or reciprocal_sqrt");
    }
    return transformed_sampler(brownian_sampler(bm), TimeInversion{v});
  }
  throw ConfigError("unknown sampler.kind '" + s.kind + "'");
}

std::vector<double> snap_times(const ProcessSampler& sampler, const std::vector<double>& times) {
  std::vector<double> out;
  for (double t : times) {
    const auto& ts = sampler.times();
    const auto it = std::min_element(ts.begin(), ts.end(), [t](double a, double b) {
      return std::abs(a - t) < std::abs(b - t);
    });
    if (it == ts.end() || std::abs(*it - t) > 1e-9 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "time " << t << " is not reachable by sampler " << sampler.describe();
      throw ConfigError(os.str());
    }
    out.push_back(*it);
  }
  return out;
}

void validate(const RunConfig& c) {
  const auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
  if (c.times.empty()) fail("times must not be empty");
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    if (!(c.times[k] > 0.0) || !std::isfinite(c.times[k])) fail("times must be positive and finite");
    if (k > 0 && !(c.times[k] > c.times[k - 1])) fail("times must be strictly ascending");
  }
  if (c.samples < 100) fail("N must be at least 100");
  if (!(c.sigma2 > 0.0) || !std::isfinite(c.sigma2)) fail("sigma2 must be positive");
  if (c.functional_count < 1) fail("functional_count must be at least 1");
  if (!(c.z > 0.0) || !std::isfinite(c.z)) fail("z must be positive");
  if (c.detector_atoms < 1) fail("detector_atoms must be at least 1");
  if (c.output.format != "json" && c.output.format != "csv") fail("output.format must be json or csv");
  if (c.output.dir.empty()) fail("output.dir must not be empty");
  try {
    const SamplerPtr sampler = build_sampler(c);
    snap_times(*sampler, c.times);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

}  // namespace fuzzybm
