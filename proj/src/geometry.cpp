#include "fuzzybm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "fuzzybm/errors.hpp"

namespace fuzzybm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDistinctTol = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double van_der_corput(std::uint64_t k) {
  double value = 0.0;
  double base = 0.5;
  while (k != 0) {
    if (k & 1U) value += base;
    k >>= 1U;
    base *= 0.5;
  }
  return value;
}

Point negated(const Point& p) {
  Point out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = -p[i];
  return out;
}

bool near_any(const Point& p, const std::vector<Point>& existing) {
  for (const auto& q : existing) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
    if (std::sqrt(d2) <= kDistinctTol) return true;
  }
  return false;
}

// Candidate generator for the k-th antipodal pair (k counts generated pairs,
// starting after the axes).
Point generated_direction(int dim, std::uint64_t seed, std::uint64_t k) {
  if (dim == 2) {
    // Indices 0 and 1 of the sequence are the axes themselves.
    const double theta = kPi * van_der_corput(k + 2);
    return {std::cos(theta), std::sin(theta)};
  }
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(k)));
  std::normal_distribution<double> normal(0.0, 1.0);
  Point p(static_cast<std::size_t>(dim));
  double n = 0.0;
  while (n < 1e-6) {
    for (auto& c : p) c = normal(rng);
    n = euclidean_norm(p);
  }
  for (auto& c : p) c /= n;
  return p;
}

void require_same_grid(const ConvexBody& a, const ConvexBody& b, const char* op) {
  if (!same_grid(a, b)) {
    throw InvalidArgument(std::string(op) + ": bodies live on different direction grids (" +
                          a.grid().id() + " vs " + b.grid().id() + ")");
  }
}

std::vector<double> support_from_vertices(const DirectionGrid& grid,
                                          const std::vector<Point>& vertices) {
  std::vector<double> support(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& u = grid.direction(i);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) best = std::max(best, dot(u, v));
    support[i] = best;
  }
  return support;
}

std::vector<Point> reduce_vertices(int dim, std::vector<Point> vertices) {
  if (dim == 1) {
    auto [lo, hi] = std::minmax_element(vertices.begin(), vertices.end(),
                                        [](const Point& a, const Point& b) { return a[0] < b[0]; });
    if ((*lo)[0] == (*hi)[0]) return {*lo};
    return {*lo, *hi};
  }
  if (dim == 2) return convex_hull_2d(std::move(vertices));
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double point_distance(const Point& p, const Point& q) {
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return point_distance(p, a);
  double t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy));
}

// Distance from p to a convex polygon given counter-clockwise.
double polygon_distance(const Point& p, const std::vector<Point>& poly) {
  if (poly.size() == 1) return point_distance(p, poly[0]);
  if (poly.size() == 2) return segment_distance(p, poly[0], poly[1]);
  bool inside = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (cross(poly[i], poly[(i + 1) % poly.size()], p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

double directed_polygon_distance(const std::vector<Point>& from, const std::vector<Point>& to) {
  double worst = 0.0;
  for (const auto& v : from) worst = std::max(worst, polygon_distance(v, to));
  return worst;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double euclidean_norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

DirectionGrid::DirectionGrid(int dim, std::size_t count, std::uint64_t seed)
    : dim_(dim), seed_(seed), id_(grid_id(dim, count, seed)) {
  if (dim < 1) throw InvalidArgument("make_direction_grid: dim must be positive");
  const auto axes = static_cast<std::size_t>(2 * dim);
  if (count < axes) {
    throw InvalidArgument("make_direction_grid: count " + std::to_string(count) +
                          " is below 2*dim = " + std::to_string(axes));
  }
  if ((count - axes) % 2 != 0) {
    throw InvalidArgument("make_direction_grid: count - 2*dim must be even (antipodal pairs)");
  }
  if (dim == 1 && count != 2) {
    throw InvalidArgument("make_direction_grid: the unit sphere of R^1 has exactly 2 points");
  }

  directions_.reserve(count);
  for (int k = 0; k < dim; ++k) {
    Point e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    directions_.push_back(e);
    e[static_cast<std::size_t>(k)] = -1.0;
    directions_.push_back(e);
  }
  std::uint64_t k = 0;
  while (directions_.size() < count) {
    Point u = generated_direction(dim, seed, k++);
    if (near_any(u, directions_)) continue;
    Point v = negated(u);
    directions_.push_back(std::move(u));
    directions_.push_back(std::move(v));
  }

  antipodes_.resize(count);
  for (std::size_t i = 0; i < count; ++i) antipodes_[i] = (i % 2 == 0) ? i + 1 : i - 1;
}

const Point& DirectionGrid::direction(std::size_t i) const {
  if (i >= directions_.size()) {
    throw InvalidArgument("direction index " + std::to_string(i) + " out of range for grid " + id_);
  }
  return directions_[i];
}

std::size_t DirectionGrid::antipode(std::size_t i) const {
  if (i >= antipodes_.size()) throw InvalidArgument("antipode: direction index out of range");
  return antipodes_[i];
}

std::size_t DirectionGrid::axis_index(int axis, bool positive) const {
  if (axis < 0 || axis >= dim_) throw InvalidArgument("axis_index: axis out of range");
  return static_cast<std::size_t>(2 * axis) + (positive ? 0U : 1U);
}

std::string grid_id(int dim, std::size_t count, std::uint64_t seed) {
  std::ostringstream os;
  os << "d" << dim << "-m" << count << "-s" << seed;
  return os.str();
}

GridPtr make_direction_grid(int dim, std::size_t count, std::uint64_t seed) {
  static std::mutex mutex;
  static std::map<std::string, GridPtr> registry;
  const std::string key = grid_id(dim, count, seed);
  {
    std::lock_guard lock(mutex);
    if (auto it = registry.find(key); it != registry.end()) return it->second;
  }
  auto grid = std::make_shared<const DirectionGrid>(dim, count, seed);
  std::lock_guard lock(mutex);
  return registry.emplace(key, std::move(grid)).first->second;
}

GridPtr grid_from_id(const std::string& id) {
  int dim = 0;
  unsigned long long count = 0;
  unsigned long long seed = 0;
  char tail = 0;
  if (std::sscanf(id.c_str(), "d%d-m%llu-s%llu%c", &dim, &count, &seed, &tail) != 3) {
    throw InvalidArgument("malformed grid id '" + id + "'");
  }
  return make_direction_grid(dim, static_cast<std::size_t>(count), seed);
}

ConvexBody::ConvexBody(GridPtr grid, std::vector<double> support,
                       std::optional<std::vector<Point>> vertices)
    : grid_(std::move(grid)), support_(std::move(support)), vertices_(std::move(vertices)) {}

ConvexBody ConvexBody::from_vertices(GridPtr grid, std::vector<Point> vertices) {
  if (!grid) throw InvalidArgument("ConvexBody: null grid");
  if (vertices.empty()) throw InvalidArgument("ConvexBody: empty vertex list (sets must be non-empty)");
  for (const auto& v : vertices) {
    if (static_cast<int>(v.size()) != grid->dim()) {
      throw InvalidArgument("ConvexBody: vertex dimension does not match grid");
    }
    for (double c : v) {
      if (!std::isfinite(c)) throw InvalidArgument("ConvexBody: non-finite vertex coordinate");
    }
  }
  auto reduced = reduce_vertices(grid->dim(), std::move(vertices));
  auto support = support_from_vertices(*grid, reduced);
  return ConvexBody(std::move(grid), std::move(support), std::move(reduced));
}

ConvexBody ConvexBody::from_support(GridPtr grid, std::vector<double> support) {
  if (!grid) throw InvalidArgument("ConvexBody: null grid");
  if (support.size() != grid->size()) {
    throw InvalidArgument("ConvexBody: support vector length does not match grid size");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) throw InvalidArgument("ConvexBody: non-finite support value");
    // A non-empty set has s(u) + s(-u) >= 0.
    if (support[i] + support[grid->antipode(i)] < -1e-12) {
      throw InvalidArgument("ConvexBody: support values describe an empty set");
    }
  }
  return ConvexBody(std::move(grid), std::move(support), std::nullopt);
}

ConvexBody ConvexBody::singleton(GridPtr grid, const Point& a) {
  return from_vertices(std::move(grid), {a});
}

ConvexBody ConvexBody::origin(GridPtr grid) {
  Point zero(static_cast<std::size_t>(grid->dim()), 0.0);
  return singleton(std::move(grid), zero);
}

ConvexBody ConvexBody::box(GridPtr grid, const Point& lo, const Point& hi) {
  const auto d = static_cast<std::size_t>(grid->dim());
  if (lo.size() != d || hi.size() != d) throw InvalidArgument("box: corner dimension mismatch");
  for (std::size_t k = 0; k < d; ++k) {
    if (lo[k] > hi[k]) throw InvalidArgument("box: lo exceeds hi");
  }
  if (d > 20) throw ResourceLimit("box: too many corners");
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = (mask >> k) & 1U ? hi[k] : lo[k];
    corners.push_back(std::move(c));
  }
  return from_vertices(std::move(grid), std::move(corners));
}

ConvexBody ConvexBody::ball(GridPtr grid, const Point& center, double radius) {
  if (static_cast<int>(center.size()) != grid->dim()) throw InvalidArgument("ball: center dimension mismatch");
  if (!(radius >= 0.0)) throw InvalidArgument("ball: radius must be non-negative");
  if (radius == 0.0) return singleton(std::move(grid), center);
  std::vector<double> support(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) support[i] = dot(grid->direction(i), center) + radius;
  return ConvexBody(std::move(grid), std::move(support), std::nullopt);
}

double ConvexBody::support(std::size_t i) const {
  if (i >= support_.size()) {
    throw InvalidArgument("support: direction index " + std::to_string(i) + " out of range");
  }
  return support_[i];
}

const std::vector<Point>& ConvexBody::vertices() const {
  if (!vertices_) throw Unsupported("ConvexBody: body carries no vertex list");
  return *vertices_;
}

double ConvexBody::width(std::size_t i) const { return support(i) + support_[grid_->antipode(i)]; }

double ConvexBody::grid_diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) best = std::max(best, width(i));
  return best;
}

Point ConvexBody::representative_point() const {
  if (vertices_) return vertices_->front();
  Point p(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) {
    p[static_cast<std::size_t>(k)] =
        0.5 * (support_[grid_->axis_index(k, true)] - support_[grid_->axis_index(k, false)]);
  }
  return p;
}

bool same_grid(const ConvexBody& a, const ConvexBody& b) {
  return a.grid_ptr() == b.grid_ptr() || a.grid() == b.grid();
}

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  require_same_grid(a, b, "minkowski_sum");
  if (a.has_vertices() && b.has_vertices()) {
    std::vector<Point> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& p : a.vertices()) {
      for (const auto& q : b.vertices()) {
        Point s(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) s[k] = p[k] + q[k];
        sums.push_back(std::move(s));
      }
    }
    return ConvexBody::from_vertices(a.grid_ptr(), std::move(sums));
  }
  std::vector<double> support(a.grid().size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    support[i] = a.support_values()[i] + b.support_values()[i];
  }
  return ConvexBody::from_support(a.grid_ptr(), std::move(support));
}

ConvexBody scale(double lambda, const ConvexBody& a) {
  if (!std::isfinite(lambda)) throw InvalidArgument("scale: non-finite factor");
  if (a.has_vertices()) {
    std::vector<Point> scaled = a.vertices();
    for (auto& v : scaled) {
      for (auto& c : v) c *= lambda;
    }
    return ConvexBody::from_vertices(a.grid_ptr(), std::move(scaled));
  }
  const auto& grid = a.grid();
  std::vector<double> support(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    support[i] = lambda >= 0.0 ? lambda * a.support_values()[i]
                               : -lambda * a.support_values()[grid.antipode(i)];
  }
  return ConvexBody::from_support(a.grid_ptr(), std::move(support));
}

ConvexBody translate(const ConvexBody& a, const Point& x) {
  return minkowski_sum(a, ConvexBody::singleton(a.grid_ptr(), x));
}

double hausdorff(const ConvexBody& a, const ConvexBody& b) {
  require_same_grid(a, b, "hausdorff");
  double best = 0.0;
  const auto sa = a.support_values();
  const auto sb = b.support_values();
  for (std::size_t i = 0; i < sa.size(); ++i) best = std::max(best, std::abs(sa[i] - sb[i]));
  return best;
}

double hausdorff_exact_polygon(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() > 2 || b.dim() > 2) throw Unsupported("hausdorff_exact_polygon: only d <= 2");
  if (!a.has_vertices() || !b.has_vertices()) {
    throw Unsupported("hausdorff_exact_polygon: both bodies need vertex lists");
  }
  if (a.dim() != b.dim()) throw InvalidArgument("hausdorff_exact_polygon: dimension mismatch");
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  if (a.dim() == 1) {
    return std::max(std::abs(va.front()[0] - vb.front()[0]), std::abs(va.back()[0] - vb.back()[0]));
  }
  return std::max(directed_polygon_distance(va, vb), directed_polygon_distance(vb, va));
}

bool contains(const ConvexBody& outer, const ConvexBody& inner, double tol) {
  require_same_grid(outer, inner, "contains");
  const auto so = outer.support_values();
  const auto si = inner.support_values();
  for (std::size_t i = 0; i < so.size(); ++i) {
    if (si[i] > so[i] + tol) return false;
  }
  return true;
}

double norm(const ConvexBody& a) {
  double best = 0.0;
  for (double s : a.support_values()) best = std::max(best, std::abs(s));
  return best;
}

std::vector<Point> convex_hull_2d(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Point> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace fuzzybm
