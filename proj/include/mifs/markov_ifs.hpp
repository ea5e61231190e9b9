#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mifs/contraction.hpp"
#include "mifs/geometry.hpp"
#include "mifs/symbolic.hpp"

namespace mifs {

// Simple polygon (2D Jordan domain). Vertices in order, implicitly closed.
struct Polygon {
  std::vector<Point> vertices;

  bool is_simple() const;  // >= 3 vertices, no self intersection
  bool contains(const Point& p) const;            // even-odd rule
  double boundary_distance(const Point& p) const;  // distance to edges
  double signed_interior_distance(const Point& p) const;
  Box bounding_box() const;
};

// Candidate open set for OSC checks: an open box or a Jordan polygon.
struct OpenSetSpec {
  std::variant<Box, Polygon> region;

  int dim() const;
  bool jordan_ok() const;
  Box bounding_box() const;
  // Distance into the open set, negative outside.
  double signed_interior_distance(const Point& p) const;
};

// Contraction maps restricted by a transition matrix.
struct MarkovIfs {
  std::vector<ContractionMap> maps;
  TransitionMatrix matrix;
  std::optional<OpenSetSpec> open_set;
  std::optional<Box> domain_box;  // bounding box used for grid computations
  std::string label;

  MarkovIfs() = default;
  MarkovIfs(std::vector<ContractionMap> maps_, TransitionMatrix matrix_,
            std::optional<OpenSetSpec> open_set_ = std::nullopt,
            std::optional<Box> domain_box_ = std::nullopt, std::string label_ = "");

  int symbol_count() const { return matrix.size(); }
  int dim() const { return maps.empty() ? 0 : maps.front().dim(); }
  double lip_max() const;

  const ContractionMap& map(int symbol) const { return maps[static_cast<size_t>(symbol)]; }

  // Sub-system on a subset of symbols (0-based, ascending); matrix restricted
  // to the corresponding rows/columns.
  MarkovIfs restrict(const std::vector<int>& symbols) const;

  // The grid box, required for attractor work.
  Box require_box() const;
};

}  // namespace mifs
