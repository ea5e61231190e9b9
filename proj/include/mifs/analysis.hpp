#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mifs/attractor.hpp"
#include "mifs/markov_ifs.hpp"
#include "mifs/voxel.hpp"

namespace mifs {

// ---------------------------------------------------------------------------
// Open set condition

struct OscParams {
  int resolution = 33;      // sample lattice per axis over the open set's box
  double shrink = 1.0 / 32;  // work with the shrink-interior of U
  int pair_sample_cap = 2048;
  int bilinear_grid = 17;  // boundary+interior sample per axis, odd => center
};

struct OscReport {
  std::string mode;  // "hosc-2d" | "box-osc-1d" | "box-osc-3d"
  double shrink = 0;
  int sample_count = 0;

  // min over maps and samples of dist(f_i(x), complement of U); < 0 means a
  // containment violation.
  double containment_margin = 0;
  int containment_worst_map = -1;
  Point containment_witness;

  std::vector<std::vector<double>> pairwise_separation;  // m x m, diagonal 0
  double min_pairwise = 0;
  int separation_worst_pair[2] = {-1, -1};
  Point separation_witness_p, separation_witness_q;

  std::vector<double> injectivity_modulus;  // exact sigma_min for affine maps
  double min_injectivity = 0;
  int injectivity_worst_map = -1;
  Point injectivity_witness_p, injectivity_witness_q;

  bool jordan_ok = false;
  bool pass = false;
};

OscReport check_osc(const MarkovIfs& ifs, const OscParams& params);

// ---------------------------------------------------------------------------
// Connectivity

struct ConnectivityReport {
  int components = 0;
  bool connected = false;
  // Tolerance-certified statement: the represented set is connected at
  // tolerance certified_tolerance if its dilation by that radius is.
  double certified_tolerance = 0;
  bool certified_connected = false;
};

ConnectivityReport connectivity_verdict(const VoxelSet& a, double error_bound = 0,
                                        int workers = 1);

// ---------------------------------------------------------------------------
// Puzzle-piece contact graph

struct PieceGraph {
  std::vector<Word> vertices;  // admissible words of the level, lexicographic
  std::vector<std::pair<int, int>> edges;
  double tolerance = 0;
  int components = 0;
  bool connected = false;
};

PieceGraph piece_graph(const MarkovIfs& ifs, size_t level, const AttractorApprox& base,
                       double tol, uint64_t cap = kDefaultWordCap, int workers = 1);

// ---------------------------------------------------------------------------
// Local connectivity profiles and witnesses

struct LcRecord {
  Point x, y;
  uint64_t cell_x = 0, cell_y = 0;
  double delta = 0;     // |x - y|
  double eps_star = 0;  // min closed-ball radius around x connecting the pair
};

struct LcSamplingSpec {
  double delta_max = 0;       // pair distance cap; <= 0 means one quarter of the box
  size_t max_pairs = 10000;   // above this many candidates, sample stratified
  uint32_t seed = 0x5EED;
};

struct LcProfile {
  std::vector<LcRecord> records;  // sorted by delta
};

LcProfile lc_profile(const VoxelSet& a, const LcSamplingSpec& spec);

// Connection radius for one concrete pair of occupied cells.
double connection_radius(const VoxelSet& a, uint64_t cell_x, uint64_t cell_y);

struct WitnessPair {
  Point x, y;
  double delta = 0;
  double eps_star = 0;      // meaningful when !unreachable
  bool unreachable = false;  // different components: no connecting set at all
};

struct WitnessParams {
  double threshold = 0.4;  // the scale c that connecting sets must exceed
  int count = 5;           // pairs demanded, deltas halving
  uint32_t seed = 0x5EED;
  int candidates_per_scale = 48;
};

struct WitnessReport {
  bool found = false;
  std::vector<WitnessPair> pairs;
  std::string verdict;  // "witness found" | "none found at this resolution"
  double threshold = 0;
};

// Searches for pairs x_i, y_i with delta_0 <= c, delta halving step by step
// and every connection radius >= c. Finding `count` of them certifies
// non-local-connectivity at scale (c, resolution).
WitnessReport non_lc_witness(const VoxelSet& a, const WitnessParams& params);

// ---------------------------------------------------------------------------
// Separating curves (2D)

struct SeparatingCurve {
  std::vector<Point> polyline;  // closed; last point joins the first
  double set_distance = 0;      // d = dist(K1, rest of A)
  double clearance = 0;         // verified min distance curve -> A centers
  bool x_inside = false;        // even-odd parity of x (y is the opposite)
};

SeparatingCurve separating_curve(const VoxelSet& a, const Point& x, const Point& y);

void write_svg(const SeparatingCurve& curve, const Box& box, std::ostream& os);

// ---------------------------------------------------------------------------
// Hausdorff-Cauchy limits

struct CauchyReport {
  std::vector<double> distances;  // successive Hausdorff distances
  double ratio = 0;               // fitted geometric decay (max step ratio)
  double residual_bound = 0;      // last distance / (1 - ratio)
};

struct CauchyLimit {
  VoxelSet limit;  // final set as limit proxy
  CauchyReport report;
};

CauchyLimit hausdorff_cauchy_limit(const std::vector<VoxelSet>& seq, int workers = 1);

}  // namespace mifs
