#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fuzzybm {

using Point = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> a);

/// Finite set of unit directions standing in for the unit sphere of R^d.
///
/// Layout: the signed axes come first (index 2k is +e_k, 2k+1 is -e_k), then
/// generated directions in antipodal pairs (u, -u). The set is therefore
/// closed under negation and `antipode(i)` is always defined.
///
/// Generation is prefix-stable: for a fixed (dim, seed) the grid with count M
/// is a subset of the grid with count M' >= M, so refining a grid never drops
/// a direction. In d = 2 the generated angles follow the base-2 van der Corput
/// sequence on [0, pi), which makes every power-of-two count equispaced.
class DirectionGrid {
 public:
  DirectionGrid(int dim, std::size_t count, std::uint64_t seed);

  int dim() const { return dim_; }
  std::size_t size() const { return directions_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::string& id() const { return id_; }

  const Point& direction(std::size_t i) const;
  const std::vector<Point>& directions() const { return directions_; }
  std::size_t antipode(std::size_t i) const;
  std::size_t axis_index(int axis, bool positive) const;

  bool operator==(const DirectionGrid& other) const { return id_ == other.id_; }

 private:
  int dim_;
  std::uint64_t seed_;
  std::string id_;
  std::vector<Point> directions_;
  std::vector<std::size_t> antipodes_;
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

std::string grid_id(int dim, std::size_t count, std::uint64_t seed);

// Grids are content-addressed by (dim, count, seed); repeated calls return the
// same shared instance.
GridPtr make_direction_grid(int dim, std::size_t count, std::uint64_t seed);
GridPtr grid_from_id(const std::string& id);

/// Compact convex subset of R^d, held as its support values on a direction
/// grid. Polytopes also carry their vertex list, from which the support is
/// derived; in d <= 2 the list is reduced to the convex hull (counter-clockwise
/// in d = 2, {min, max} in d = 1).
class ConvexBody {
 public:
  static ConvexBody from_vertices(GridPtr grid, std::vector<Point> vertices);
  static ConvexBody from_support(GridPtr grid, std::vector<double> support);
  static ConvexBody singleton(GridPtr grid, const Point& a);
  static ConvexBody origin(GridPtr grid);
  static ConvexBody box(GridPtr grid, const Point& lo, const Point& hi);
  static ConvexBody ball(GridPtr grid, const Point& center, double radius);

  const DirectionGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return grid_->dim(); }

  double support(std::size_t i) const;
  std::span<const double> support_values() const { return support_; }

  bool has_vertices() const { return vertices_.has_value(); }
  // Throws Unsupported when the body carries no vertex list.
  const std::vector<Point>& vertices() const;

  // s(u_i) + s(-u_i).
  double width(std::size_t i) const;
  // Maximum width over the grid.
  double grid_diameter() const;
  // A point of the body: first vertex, or the midpoint of the axis extents for
  // support-only bodies (exact for balls and singletons).
  Point representative_point() const;

 private:
  ConvexBody(GridPtr grid, std::vector<double> support,
             std::optional<std::vector<Point>> vertices);

  GridPtr grid_;
  std::vector<double> support_;
  std::optional<std::vector<Point>> vertices_;
};

bool same_grid(const ConvexBody& a, const ConvexBody& b);

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);
ConvexBody scale(double lambda, const ConvexBody& a);
ConvexBody translate(const ConvexBody& a, const Point& x);

// Grid Hausdorff distance max_i |s_A(u_i) - s_B(u_i)|. A lower bound for the
// true distance that converges as the grid is refined.
double hausdorff(const ConvexBody& a, const ConvexBody& b);

// Exact Hausdorff distance between polytopes in d <= 2 from their vertex
// lists. Throws Unsupported for d > 2 or bodies without vertices.
double hausdorff_exact_polygon(const ConvexBody& a, const ConvexBody& b);

// Grid inclusion certificate: s_B(u_i) <= s_A(u_i) + tol for every i.
bool contains(const ConvexBody& outer, const ConvexBody& inner, double tol = 0.0);

// Hausdorff distance to {0} on the grid, max_i |s_A(u_i)|.
double norm(const ConvexBody& a);

// Convex hull in the plane (monotone chain); collinear and duplicate points
// are dropped and the result is counter-clockwise.
std::vector<Point> convex_hull_2d(std::vector<Point> points);

}  // namespace fuzzybm
