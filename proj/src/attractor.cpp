#include "mifs/attractor.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>

#include "mifs/errors.hpp"
#include "parallel.hpp"

namespace mifs {

namespace {

// 2^d supersample offsets at the quarter points of a cell. With two
// samples per axis, images of adjacent samples are lip*h/2 < h apart, so
// a connected source cannot rasterize with gaps.
std::vector<Point> quarter_offsets(int dim, double h) {
  std::vector<Point> offs;
  int count = 1 << dim;
  for (int mask = 0; mask < count; ++mask) {
    Point o;
    o.dim = dim;
    for (int a = 0; a < dim; ++a) o[a] = ((mask >> a) & 1) ? 0.25 * h : -0.25 * h;
    offs.push_back(o);
  }
  return offs;
}

struct RasterFrame {
  // Target grid data, shared across worker chunks.
  Point lo;
  double inv_h = 0;
  int n = 0;
  int dim = 0;
  double tol_cells = 0;
};

// Map a point to its target cell; boundary coordinates fall to the lower
// cell. Returns false when the point leaves the box beyond tolerance.
inline bool target_cell(const RasterFrame& fr, const Point& p, uint64_t* out) {
  uint64_t idx = 0;
  uint64_t mul = 1;
  for (int a = 0; a < fr.dim; ++a) {
    double u = (p[a] - fr.lo[a]) * fr.inv_h;
    if (u < -fr.tol_cells || u > double(fr.n) + fr.tol_cells) return false;
    int i = int(std::ceil(u)) - 1;
    i = std::clamp(i, 0, fr.n - 1);
    idx += mul * uint64_t(i);
    mul *= uint64_t(fr.n);
  }
  *out = idx;
  return true;
}

// Rasterize f(samples(src)) into dst. Deterministic for any worker count:
// bit OR is commutative and idempotent.
template <typename Eval>
void raster_image(const VoxelSet& src, VoxelSet& dst, const Eval& eval,
                  const std::vector<Point>& offs, int workers, const char* what) {
  RasterFrame fr;
  fr.lo = src.box().lo;
  fr.inv_h = 1.0 / src.cell_size();
  fr.n = src.resolution();
  fr.dim = src.dim();
  fr.tol_cells = 1e-9 * fr.n;

  std::atomic<bool> diverged{false};
  auto words = src.words();
  const bool threaded = resolve_workers(workers) > 1;

  parallel_for(words.size(), workers, [&](uint64_t wb, uint64_t we) {
    Point sample;
    sample.dim = fr.dim;
    for (uint64_t wi = wb; wi < we; ++wi) {
      uint64_t w = words[wi];
      while (w) {
        int b = std::countr_zero(w);
        w &= w - 1;
        uint64_t idx = wi * 64 + uint64_t(b);
        Point center = src.cell_center(idx);
        for (const Point& o : offs) {
          for (int a = 0; a < fr.dim; ++a) sample[a] = center[a] + o[a];
          Point img = eval(sample);
          uint64_t tgt;
          if (!target_cell(fr, img, &tgt)) {
            diverged.store(true, std::memory_order_relaxed);
            continue;
          }
          if (threaded)
            dst.set_atomic(tgt);
          else
            dst.set(tgt);
        }
      }
    }
  });
  dst.recount();
  if (diverged.load())
    throw GuardError(std::string(what) + ": a mapped sample left the bounding box");
}

void check_forward_invariance(const MarkovIfs& ifs, const Box& box) {
  // All map variants send the box into the convex hull of its corner
  // images, so corners decide containment.
  const int dim = box.dim;
  const double tol = 1e-9 * box.side(0);
  for (int s = 0; s < ifs.symbol_count(); ++s) {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Point corner;
      corner.dim = dim;
      for (int a = 0; a < dim; ++a) corner[a] = ((mask >> a) & 1) ? box.hi[a] : box.lo[a];
      Point img = ifs.map(s).eval(corner);
      if (!box.contains(img, tol))
        throw GuardError("map " + std::to_string(s + 1) + " sends box corner " +
                         format_point(corner) + " to " + format_point(img) +
                         " outside the bounding box");
    }
  }
}

template <typename Fn>
void with_eval(const ContractionMap& f, const Fn& fn) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ProductMap>) {
          std::visit(
              [&](const auto& g) {
                fn([&g, &m](const Point& x) {
                  Point xy(x[0], x[1]);
                  Point img = g.eval(xy);
                  return Point(img[0], img[1], m.line_a * x[2] + m.line_b);
                });
              },
              m.plane);
        } else {
          fn([&m](const Point& x) { return m.eval(x); });
        }
      },
      f.impl());
}

}  // namespace

ProjectResult project_word(const MarkovIfs& ifs, const Word& w, const Point& x0) {
  if (w.empty()) throw InstanceError("project_word requires a nonempty word");
  if (!is_admissible(ifs.matrix, w))
    throw InstanceError("word " + w.str_1based() + " is not admissible");
  Box box = ifs.require_box();
  if (!box.contains(x0, 1e-9 * box.side(0)))
    throw GuardError("base point " + format_point(x0) + " lies outside the bounding box");
  ProjectResult r;
  double lip = 1.0;
  Point x = x0;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    x = ifs.map(*it).eval(x);
    lip *= ifs.map(*it).lip_bound();
  }
  r.point = x;
  r.error_radius = lip * box.diameter();
  return r;
}

AttractorApprox iterate_attractor(const MarkovIfs& ifs, const GridSpec& grid,
                                  const IterateOptions& opts) {
  grid.validate();
  if (grid.box.dim != ifs.dim())
    throw InstanceError("grid dimension differs from the IFS dimension");
  if (opts.iterations < 1) throw GuardError("iterate_attractor requires iterations >= 1");
  SubshiftCheck sc = subshift_nonempty(ifs.matrix);
  if (!sc.nonempty)
    throw GuardError("subshift is empty: transition graph has no cycle, no attractor exists");
  check_forward_invariance(ifs, grid.box);

  const int m = ifs.symbol_count();
  const auto offs = quarter_offsets(grid.box.dim, grid.cell_size());

  std::vector<std::vector<int>> followers(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) followers[s] = follower_set(ifs.matrix, s);

  std::vector<VoxelSet> cur(static_cast<size_t>(m), VoxelSet(grid));
  for (auto& x : cur) x.set_all();

  VoxelSet prev_union(grid);
  if (opts.step_distances) {
    prev_union.set_all();
    opts.step_distances->clear();
  }

  for (int t = 0; t < opts.iterations; ++t) {
    std::vector<VoxelSet> next;
    next.reserve(static_cast<size_t>(m));
    for (int s = 0; s < m; ++s) {
      // Union of the frozen previous generation over the follower set.
      VoxelSet src(grid);
      for (int j : followers[s]) src.or_with(cur[static_cast<size_t>(j)]);
      VoxelSet dst(grid);
      if (!src.empty()) {
        with_eval(ifs.map(s), [&](const auto& ev) {
          raster_image(src, dst, ev, offs, opts.workers, "iterate_attractor");
        });
      }
      next.push_back(std::move(dst));
    }
    cur = std::move(next);
    if (opts.step_distances) {
      VoxelSet u(grid);
      for (const auto& x : cur) u.or_with(x);
      opts.step_distances->push_back(
          (u.empty() || prev_union.empty()) ? 0.0 : hausdorff_distance(prev_union, u));
      prev_union = std::move(u);
    }
  }

  AttractorApprox out;
  out.union_set = VoxelSet(grid);
  for (const auto& x : cur) out.union_set.or_with(x);
  out.per_symbol = std::move(cur);
  out.iterations = opts.iterations;
  out.lip_max = ifs.lip_max();
  out.error_bound = std::pow(out.lip_max, opts.iterations) * grid.box.diameter() +
                    grid.cell_size() * std::sqrt(double(grid.box.dim));
  return out;
}

int iterations_for_error(const MarkovIfs& ifs, const Box& box, double eps) {
  if (!(eps > 0)) throw UsageError("target error must be positive");
  double d = box.diameter();
  if (eps >= d) return 1;
  double k = std::ceil(std::log(eps / d) / std::log(ifs.lip_max()));
  return std::max(1, int(k));
}

CloudResult enumerate_cloud(const MarkovIfs& ifs, size_t n, const Point& x0, uint64_t cap) {
  Box box = ifs.require_box();
  uint64_t predicted = count_admissible(ifs.matrix, n);
  if (predicted > cap)
    throw GuardError("enumerate_cloud: predicted word count " + std::to_string(predicted) +
                     " exceeds cap " + std::to_string(cap) +
                     "; use iterate_attractor for deep approximations");
  CloudResult r;
  r.error_radius = std::pow(ifs.lip_max(), double(n)) * box.diameter();
  std::vector<Word> words = admissible_words(ifs.matrix, n, cap);
  r.points.reserve(words.size());
  for (const Word& w : words) {
    if (w.empty()) {
      r.points.push_back(x0);
      continue;
    }
    Point x = x0;
    for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it)
      x = ifs.map(*it).eval(x);
    r.points.push_back(x);
  }
  return r;
}

VoxelSet piece_approx(const MarkovIfs& ifs, const Word& theta, const AttractorApprox& base,
                      int workers) {
  if (theta.empty()) throw InstanceError("piece_approx requires a nonempty word");
  if (!is_admissible(ifs.matrix, theta))
    throw InstanceError("word " + theta.str_1based() + " is not admissible");
  if (theta.length() == 1) return base.per_symbol[static_cast<size_t>(theta.symbols[0])];

  const GridSpec grid = base.union_set.grid();
  VoxelSet src(grid);
  for (int j : follower_set(ifs.matrix, theta.last()))
    src.or_with(base.per_symbol[static_cast<size_t>(j)]);
  VoxelSet dst(grid);
  if (src.empty()) return dst;

  ComposedMap f = compose_word(ifs, theta);
  const auto offs = quarter_offsets(grid.box.dim, grid.cell_size());
  if (f.affine) {
    const AffineMap& a = *f.affine;
    raster_image(src, dst, [&a](const Point& x) { return a.eval(x); }, offs, workers,
                 "piece_approx");
  } else {
    raster_image(src, dst, [&f](const Point& x) { return f.eval(x); }, offs, workers,
                 "piece_approx");
  }
  return dst;
}

}  // namespace mifs
