#include "mifs/markov_ifs.hpp"

#include <algorithm>
#include <cmath>

#include "mifs/errors.hpp"

namespace mifs {

namespace {

// Proper segment intersection (shared endpoints of adjacent edges excluded
// by the caller).
double orient(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
      o4 != 0)
    return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  Point ab = b - a;
  double len2 = ab.norm2();
  if (len2 == 0) return dist(p, a);
  double t = ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2;
  t = std::clamp(t, 0.0, 1.0);
  Point proj = a + ab * t;
  return dist(p, proj);
}

}  // namespace

bool Polygon::is_simple() const {
  const size_t n = vertices.size();
  if (n < 3) return false;
  for (const Point& v : vertices)
    if (v.dim != 2) return false;
  for (size_t i = 0; i < n; ++i) {
    Point a = vertices[i], b = vertices[(i + 1) % n];
    if (dist(a, b) == 0) return false;  // degenerate edge
    for (size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex with edge i.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      Point c = vertices[j], d = vertices[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

bool Polygon::contains(const Point& p) const {
  bool inside = false;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices[i];
    const Point& b = vertices[j];
    if ((a[1] > p[1]) != (b[1] > p[1])) {
      double xint = (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0];
      if (p[0] < xint) inside = !inside;
    }
  }
  return inside;
}

double Polygon::boundary_distance(const Point& p) const {
  double best = 1e300;
  const size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(p, vertices[i], vertices[(i + 1) % n]));
  return best;
}

double Polygon::signed_interior_distance(const Point& p) const {
  double d = boundary_distance(p);
  return contains(p) ? d : -d;
}

Box Polygon::bounding_box() const {
  Point lo(1e300, 1e300), hi(-1e300, -1e300);
  for (const Point& v : vertices)
    for (int i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  return Box(lo, hi);
}

int OpenSetSpec::dim() const {
  if (auto* b = std::get_if<Box>(&region)) return b->dim;
  return 2;
}

bool OpenSetSpec::jordan_ok() const {
  if (auto* b = std::get_if<Box>(&region)) return b->valid();
  return std::get<Polygon>(region).is_simple();
}

Box OpenSetSpec::bounding_box() const {
  if (auto* b = std::get_if<Box>(&region)) return *b;
  return std::get<Polygon>(region).bounding_box();
}

double OpenSetSpec::signed_interior_distance(const Point& p) const {
  if (auto* b = std::get_if<Box>(&region)) return b->signed_interior_distance(p);
  return std::get<Polygon>(region).signed_interior_distance(p);
}

MarkovIfs::MarkovIfs(std::vector<ContractionMap> maps_, TransitionMatrix matrix_,
                     std::optional<OpenSetSpec> open_set_, std::optional<Box> domain_box_,
                     std::string label_)
    : maps(std::move(maps_)),
      matrix(std::move(matrix_)),
      open_set(std::move(open_set_)),
      domain_box(std::move(domain_box_)),
      label(std::move(label_)) {
  if (maps.empty()) throw InstanceError("Markov IFS needs at least one map");
  if (static_cast<int>(maps.size()) != matrix.size())
    throw InstanceError("matrix/maps mismatch: " + std::to_string(matrix.size()) +
                        " matrix rows vs " + std::to_string(maps.size()) + " maps");
  int d = maps.front().dim();
  for (const auto& f : maps)
    if (f.dim() != d) throw InstanceError("all maps must share one dimension");
  if (open_set && open_set->dim() != d)
    throw InstanceError("open set dimension differs from map dimension");
  if (domain_box && domain_box->dim != d)
    throw InstanceError("domain box dimension differs from map dimension");
}

double MarkovIfs::lip_max() const {
  double l = 0;
  for (const auto& f : maps) l = std::max(l, f.lip_bound());
  return l;
}

MarkovIfs MarkovIfs::restrict(const std::vector<int>& symbols) const {
  for (int s : symbols)
    if (s < 0 || s >= symbol_count())
      throw InstanceError("restrict: symbol " + std::to_string(s + 1) + " out of range");
  std::vector<ContractionMap> sub_maps;
  std::vector<std::vector<int>> rows(symbols.size(), std::vector<int>(symbols.size(), 0));
  for (size_t i = 0; i < symbols.size(); ++i) {
    sub_maps.push_back(maps[static_cast<size_t>(symbols[i])]);
    for (size_t j = 0; j < symbols.size(); ++j)
      rows[i][j] = matrix.at(symbols[i], symbols[j]) ? 1 : 0;
  }
  MarkovIfs sub(std::move(sub_maps), TransitionMatrix(std::move(rows)), open_set, domain_box,
                label + "/sub");
  return sub;
}

Box MarkovIfs::require_box() const {
  if (!domain_box)
    throw GuardError("instance '" + label + "' supplies no bounding box for grid work");
  return *domain_box;
}

}  // namespace mifs
