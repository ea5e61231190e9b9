#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "mifs/geometry.hpp"

namespace mifs {

// Cubic-cell grid geometry. Resolution is cells per axis; the box must be
// a cube so cells are cubes.
struct GridSpec {
  Box box;
  int resolution = 0;

  void validate() const;
  double cell_size() const { return box.side(0) / resolution; }
};

// Compact set approximated by a union of closed grid cells.
class VoxelSet {
 public:
  VoxelSet() = default;
  explicit VoxelSet(const GridSpec& grid);

  int dim() const { return dim_; }
  int resolution() const { return n_; }
  const Box& box() const { return box_; }
  GridSpec grid() const { return GridSpec{box_, n_}; }
  double cell_size() const { return h_; }
  uint64_t cell_count() const { return total_; }

  bool same_geometry(const VoxelSet& o) const;

  bool empty() const { return occupied_count_ == 0; }
  uint64_t occupied_count() const { return occupied_count_; }

  bool test(uint64_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(uint64_t idx) {
    uint64_t& w = words_[idx >> 6];
    uint64_t m = uint64_t(1) << (idx & 63);
    if (!(w & m)) {
      w |= m;
      ++occupied_count_;
    }
  }
  void set_atomic(uint64_t idx);  // occupied_count_ left stale; call recount()
  void recount();
  void set_all();

  uint64_t index_of(int ix, int iy = 0, int iz = 0) const {
    return uint64_t(ix) + uint64_t(n_) * (uint64_t(iy) + uint64_t(n_) * uint64_t(iz));
  }
  void coords_of(uint64_t idx, int* ix, int* iy, int* iz) const {
    *ix = int(idx % uint64_t(n_));
    uint64_t r = idx / uint64_t(n_);
    *iy = int(r % uint64_t(n_));
    *iz = int(r / uint64_t(n_));
  }

  Point cell_center(uint64_t idx) const;

  // Cell index along one axis for coordinate x; points on a cell boundary
  // belong to the lower cell. Returns -1 below / n above when outside.
  int axis_cell(int axis, double x) const;

  // Linear cell index for a point, or -1 when outside the box (points
  // within one cell of the box are clamped).
  int64_t cell_of(const Point& p) const;

  void for_each_occupied(const std::function<void(uint64_t)>& fn) const;
  std::vector<uint64_t> occupied_cells() const;

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words_mut() { return words_; }
  void or_with(const VoxelSet& o);  // occupancy union, same geometry

  bool operator==(const VoxelSet& o) const {
    return same_geometry(o) && words_ == o.words_;
  }

 private:
  int dim_ = 0;
  int n_ = 0;
  Box box_;
  double h_ = 0;
  uint64_t total_ = 0;
  uint64_t occupied_count_ = 0;
  std::vector<uint64_t> words_;
};

// Exact Euclidean distances between cell centers, kept as squared values
// in cell units (integers, so oracle comparisons are exact).
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(GridSpec grid, std::vector<double> sq);

  const GridSpec& grid() const { return grid_; }
  double sq_cells(uint64_t idx) const { return sq_[idx]; }
  double distance(uint64_t idx) const;
  const std::vector<double>& raw_sq() const { return sq_; }

 private:
  GridSpec grid_;
  double h_ = 0;
  std::vector<double> sq_;
};

// Separable lower-envelope squared-distance transform. Errors on empty
// input.
DistanceField distance_transform(const VoxelSet& a, int workers = 1);

// max over each set of the distance to the other, cell-center metric.
double hausdorff_distance(const VoxelSet& a, const VoxelSet& b, int workers = 1);
// Same quantity as an exact squared value in cell units.
double hausdorff_sq_cells(const VoxelSet& a, const VoxelSet& b, int workers = 1);
// One-sided min distance between two sets (cell centers).
double min_distance(const VoxelSet& a, const VoxelSet& b, int workers = 1);

// Cells whose center distance to a is < r, plus a itself.
VoxelSet dilate(const VoxelSet& a, double r, int workers = 1);

enum class Adjacency { face, face_vertex };

struct Components {
  std::vector<int32_t> label;  // -1 for empty cells
  int count = 0;
};
Components connected_components(const VoxelSet& a, Adjacency adj = Adjacency::face);

VoxelSet rasterize_points(std::span<const Point> points, const GridSpec& grid);

// P5 binary PGM, 0 empty / 255 occupied, rows top-down. 2D only.
void write_pgm(const VoxelSet& a, std::ostream& os);
// Cell-center coordinates, one cell per line, lexicographic. 1D/3D.
void write_xyz(const VoxelSet& a, std::ostream& os);

}  // namespace mifs
