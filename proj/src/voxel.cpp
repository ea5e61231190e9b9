#include "mifs/voxel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <ostream>

#include "mifs/errors.hpp"
#include "parallel.hpp"

namespace mifs {

namespace {
// Large finite sentinel: exact double arithmetic still holds when added to
// squared cell offsets (< 2^53), and no finite distance can reach it.
constexpr double kFar = 1e15;
}  // namespace

void GridSpec::validate() const {
  if (!box.valid()) throw InstanceError("grid box is invalid (lo < hi per axis required)");
  if (!box.cubic()) throw InstanceError("grid box must be a cube (cubic cells)");
  if (resolution < 1) throw InstanceError("grid resolution must be >= 1");
  if (resolution > (1 << 13)) throw GuardError("grid resolution above 2^13 refused");
}

VoxelSet::VoxelSet(const GridSpec& grid) {
  grid.validate();
  dim_ = grid.box.dim;
  n_ = grid.resolution;
  box_ = grid.box;
  h_ = grid.cell_size();
  total_ = 1;
  for (int i = 0; i < dim_; ++i) total_ *= uint64_t(n_);
  words_.assign((total_ + 63) / 64, 0);
}

bool VoxelSet::same_geometry(const VoxelSet& o) const {
  return dim_ == o.dim_ && n_ == o.n_ && box_.lo == o.box_.lo && box_.hi == o.box_.hi;
}

void VoxelSet::set_atomic(uint64_t idx) {
  std::atomic_ref<uint64_t> w(words_[idx >> 6]);
  w.fetch_or(uint64_t(1) << (idx & 63), std::memory_order_relaxed);
}

void VoxelSet::recount() {
  uint64_t c = 0;
  for (uint64_t w : words_) c += uint64_t(std::popcount(w));
  occupied_count_ = c;
}

void VoxelSet::set_all() {
  std::fill(words_.begin(), words_.end(), ~uint64_t(0));
  if (total_ % 64) words_.back() = (uint64_t(1) << (total_ % 64)) - 1;
  occupied_count_ = total_;
}

Point VoxelSet::cell_center(uint64_t idx) const {
  int ix, iy, iz;
  coords_of(idx, &ix, &iy, &iz);
  Point p;
  p.dim = dim_;
  p[0] = box_.lo[0] + (ix + 0.5) * h_;
  if (dim_ > 1) p[1] = box_.lo[1] + (iy + 0.5) * h_;
  if (dim_ > 2) p[2] = box_.lo[2] + (iz + 0.5) * h_;
  return p;
}

int VoxelSet::axis_cell(int axis, double x) const {
  double u = (x - box_.lo[axis]) / h_;
  if (u < 0) return -1;
  if (u > n_) return n_;
  // Boundary coordinates belong to the lower cell.
  int i = int(std::ceil(u)) - 1;
  return std::clamp(i, 0, n_ - 1);
}

int64_t VoxelSet::cell_of(const Point& p) const {
  int idx[3] = {0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    double x = p[a];
    if (x < box_.lo[a] - h_ || x > box_.hi[a] + h_) return -1;
    x = std::clamp(x, box_.lo[a], box_.hi[a]);
    idx[a] = axis_cell(a, x);
  }
  return int64_t(index_of(idx[0], idx[1], idx[2]));
}

void VoxelSet::for_each_occupied(const std::function<void(uint64_t)>& fn) const {
  for (size_t wi = 0; wi < words_.size(); ++wi) {
    uint64_t w = words_[wi];
    while (w) {
      int b = std::countr_zero(w);
      fn(uint64_t(wi) * 64 + uint64_t(b));
      w &= w - 1;
    }
  }
}

std::vector<uint64_t> VoxelSet::occupied_cells() const {
  std::vector<uint64_t> out;
  out.reserve(occupied_count_);
  for_each_occupied([&](uint64_t i) { out.push_back(i); });
  return out;
}

void VoxelSet::or_with(const VoxelSet& o) {
  if (!same_geometry(o)) throw InstanceError("voxel union requires identical geometry");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  recount();
}

DistanceField::DistanceField(GridSpec grid, std::vector<double> sq)
    : grid_(std::move(grid)), h_(grid_.cell_size()), sq_(std::move(sq)) {}

double DistanceField::distance(uint64_t idx) const { return h_ * std::sqrt(sq_[idx]); }

namespace {

// Lower envelope of parabolas (q - v)^2 + f(v); exact for integer inputs.
void dt1d(const double* f, double* d, int n, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s;
    for (;;) {
      double vq = double(v[k]);
      s = ((f[q] + double(q) * q) - (f[v[k]] + vq * vq)) / (2.0 * q - 2.0 * vq);
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    double dq = double(q) - double(v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

DistanceField distance_transform(const VoxelSet& a, int workers) {
  if (a.empty()) throw GuardError("distance transform: no occupied cells");
  const int n = a.resolution();
  const int dim = a.dim();
  const uint64_t total = a.cell_count();

  std::vector<double> field(total);
  for (uint64_t i = 0; i < total; ++i) field[i] = a.test(i) ? 0.0 : kFar;

  // One pass per axis; lines along the axis are independent.
  for (int axis = 0; axis < dim; ++axis) {
    uint64_t stride = 1;
    for (int k = 0; k < axis; ++k) stride *= uint64_t(n);
    uint64_t lines = total / uint64_t(n);
    parallel_for(lines, workers, [&](uint64_t lbegin, uint64_t lend) {
      std::vector<double> f(n), d(n);
      std::vector<int> v(n);
      std::vector<double> z(n + 1);
      for (uint64_t line = lbegin; line < lend; ++line) {
        // Decompose the line id into the non-axis coordinates.
        uint64_t lo = line % stride;
        uint64_t hi = line / stride;
        uint64_t base = lo + hi * stride * uint64_t(n);
        for (int q = 0; q < n; ++q) f[q] = field[base + uint64_t(q) * stride];
        dt1d(f.data(), d.data(), n, v.data(), z.data());
        for (int q = 0; q < n; ++q) field[base + uint64_t(q) * stride] = d[q];
      }
    });
  }
  return DistanceField(a.grid(), std::move(field));
}

double hausdorff_sq_cells(const VoxelSet& a, const VoxelSet& b, int workers) {
  if (!a.same_geometry(b)) throw InstanceError("hausdorff distance requires common geometry");
  if (a.empty() || b.empty()) throw GuardError("hausdorff distance of an empty set");
  double worst = 0;
  {
    DistanceField db = distance_transform(b, workers);
    a.for_each_occupied([&](uint64_t i) { worst = std::max(worst, db.sq_cells(i)); });
  }
  {
    DistanceField da = distance_transform(a, workers);
    b.for_each_occupied([&](uint64_t i) { worst = std::max(worst, da.sq_cells(i)); });
  }
  return worst;
}

double hausdorff_distance(const VoxelSet& a, const VoxelSet& b, int workers) {
  return a.cell_size() * std::sqrt(hausdorff_sq_cells(a, b, workers));
}

double min_distance(const VoxelSet& a, const VoxelSet& b, int workers) {
  if (!a.same_geometry(b)) throw InstanceError("min distance requires common geometry");
  if (a.empty() || b.empty()) throw GuardError("min distance of an empty set");
  DistanceField db = distance_transform(b, workers);
  double best = kFar;
  a.for_each_occupied([&](uint64_t i) { best = std::min(best, db.sq_cells(i)); });
  return a.cell_size() * std::sqrt(best);
}

VoxelSet dilate(const VoxelSet& a, double r, int workers) {
  if (r < 0) throw InstanceError("dilate radius must be >= 0");
  if (r == 0 || a.empty()) return a;
  DistanceField df = distance_transform(a, workers);
  double thr = (r / a.cell_size()) * (r / a.cell_size());
  VoxelSet out(a.grid());
  for (uint64_t i = 0; i < a.cell_count(); ++i)
    if (df.sq_cells(i) < thr || a.test(i)) out.set(i);
  return out;
}

Components connected_components(const VoxelSet& a, Adjacency adj) {
  Components comp;
  comp.label.assign(a.cell_count(), -1);
  const int n = a.resolution();
  const int dim = a.dim();

  // Neighbor offsets.
  std::vector<std::array<int, 3>> offs;
  if (adj == Adjacency::face) {
    for (int ax = 0; ax < dim; ++ax)
      for (int s : {-1, 1}) {
        std::array<int, 3> o{0, 0, 0};
        o[static_cast<size_t>(ax)] = s;
        offs.push_back(o);
      }
  } else {
    int r[3] = {1, dim > 1 ? 1 : 0, dim > 2 ? 1 : 0};
    for (int dx = -r[0]; dx <= r[0]; ++dx)
      for (int dy = -r[1]; dy <= r[1]; ++dy)
        for (int dz = -r[2]; dz <= r[2]; ++dz)
          if (dx || dy || dz) offs.push_back({dx, dy, dz});
  }

  std::vector<uint64_t> stack;
  int32_t next = 0;
  // Scan order assigns component ids by the smallest linear cell index.
  for (uint64_t seed = 0; seed < a.cell_count(); ++seed) {
    if (!a.test(seed) || comp.label[seed] >= 0) continue;
    int32_t id = next++;
    comp.label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      uint64_t cur = stack.back();
      stack.pop_back();
      int ix, iy, iz;
      a.coords_of(cur, &ix, &iy, &iz);
      for (const auto& o : offs) {
        int jx = ix + o[0], jy = iy + o[1], jz = iz + o[2];
        if (jx < 0 || jx >= n || (dim > 1 && (jy < 0 || jy >= n)) ||
            (dim > 2 && (jz < 0 || jz >= n)))
          continue;
        uint64_t ni = a.index_of(jx, dim > 1 ? jy : 0, dim > 2 ? jz : 0);
        if (!a.test(ni) || comp.label[ni] >= 0) continue;
        comp.label[ni] = id;
        stack.push_back(ni);
      }
    }
  }
  comp.count = next;
  return comp;
}

VoxelSet rasterize_points(std::span<const Point> points, const GridSpec& grid) {
  VoxelSet out(grid);
  for (const Point& p : points) {
    if (p.dim != grid.box.dim)
      throw InstanceError("rasterize: point dimension mismatch at " + format_point(p));
    int64_t idx = out.cell_of(p);
    if (idx < 0)
      throw InstanceError("rasterize: point " + format_point(p) +
                          " lies outside the box beyond one-cell tolerance");
    out.set(uint64_t(idx));
  }
  return out;
}

void write_pgm(const VoxelSet& a, std::ostream& os) {
  if (a.dim() != 2) throw InstanceError("PGM export is 2D only");
  const int n = a.resolution();
  os << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(n));
  for (int iy = n - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < n; ++ix)
      row[static_cast<size_t>(ix)] = a.test(a.index_of(ix, iy)) ? 255 : 0;
    os.write(reinterpret_cast<const char*>(row.data()), n);
  }
}

void write_xyz(const VoxelSet& a, std::ostream& os) {
  const int n = a.resolution();
  char buf[128];
  if (a.dim() == 1) {
    for (int ix = 0; ix < n; ++ix) {
      if (!a.test(uint64_t(ix))) continue;
      Point c = a.cell_center(uint64_t(ix));
      std::snprintf(buf, sizeof buf, "%.17g\n", c[0]);
      os << buf;
    }
    return;
  }
  if (a.dim() == 2) {
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy) {
        if (!a.test(a.index_of(ix, iy))) continue;
        Point c = a.cell_center(a.index_of(ix, iy));
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c[0], c[1]);
        os << buf;
      }
    return;
  }
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        uint64_t idx = a.index_of(ix, iy, iz);
        if (!a.test(idx)) continue;
        Point c = a.cell_center(idx);
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", c[0], c[1], c[2]);
        os << buf;
      }
}

}  // namespace mifs
