#pragma once

#include <vector>

#include "mifs/markov_ifs.hpp"
#include "mifs/symbolic.hpp"
#include "mifs/voxel.hpp"

namespace mifs {

struct ProjectResult {
  Point point;
  double error_radius = 0;  // around the projection of any extension of w
};

// f_{w_0} ∘ ... ∘ f_{w_{n-1}}(x0) with the contraction-product radius.
ProjectResult project_word(const MarkovIfs& ifs, const Word& w, const Point& x0);

struct IterateOptions {
  int iterations = 1;
  int workers = 1;
  // Hausdorff distance between successive union sets, when requested.
  std::vector<double>* step_distances = nullptr;
};

// Per-symbol grids plus their union; error_bound is a certified Hausdorff
// radius between the union and the true attractor.
struct AttractorApprox {
  std::vector<VoxelSet> per_symbol;
  VoxelSet union_set;
  int iterations = 0;
  double lip_max = 0;
  double error_bound = 0;
};

// Graph-directed Hutchinson iteration from the full box: each symbol grid
// is replaced by the rasterized image of the union of its follower grids.
AttractorApprox iterate_attractor(const MarkovIfs& ifs, const GridSpec& grid,
                                  const IterateOptions& opts);

// Smallest k with lip_max^k * diam(box) <= eps.
int iterations_for_error(const MarkovIfs& ifs, const Box& box, double eps);

struct CloudResult {
  std::vector<Point> points;  // one per admissible word, enumeration order
  double error_radius = 0;
};

CloudResult enumerate_cloud(const MarkovIfs& ifs, size_t n, const Point& x0,
                            uint64_t cap = kDefaultWordCap);

// Level-|θ| puzzle piece: f_θ applied to the follower union of θ's last
// symbol. θ = (i) is exactly the stored per-symbol grid.
VoxelSet piece_approx(const MarkovIfs& ifs, const Word& theta, const AttractorApprox& base,
                      int workers = 1);

}  // namespace mifs
