#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace mifs {

// Point / vector in R^d with d in {1,2,3}. Unused coordinates stay zero so
// arithmetic never needs to branch on the dimension.
struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 0;

  Point() = default;
  explicit Point(double x) : c{x, 0, 0}, dim(1) {}
  Point(double x, double y) : c{x, y, 0}, dim(2) {}
  Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double operator[](int i) const { return c[static_cast<size_t>(i)]; }
  double& operator[](int i) { return c[static_cast<size_t>(i)]; }

  Point operator+(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < 3; ++i) r.c[i] += o.c[i];
    return r;
  }
  Point operator-(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < 3; ++i) r.c[i] -= o.c[i];
    return r;
  }
  Point operator*(double s) const {
    Point r = *this;
    for (int i = 0; i < 3; ++i) r.c[i] *= s;
    return r;
  }
  bool operator==(const Point& o) const { return dim == o.dim && c == o.c; }

  double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
  double norm() const { return std::sqrt(norm2()); }
};

inline double dist(const Point& a, const Point& b) { return (a - b).norm(); }
inline double dist2(const Point& a, const Point& b) { return (a - b).norm2(); }

// Dense row-major d x d matrix, d <= 3.
struct Mat {
  std::array<double, 9> a{};
  int dim = 0;

  Mat() = default;
  explicit Mat(int d) : dim(d) {}

  double at(int i, int j) const { return a[static_cast<size_t>(i * dim + j)]; }
  double& at(int i, int j) { return a[static_cast<size_t>(i * dim + j)]; }

  Point apply(const Point& x) const {
    Point r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) {
      double s = 0;
      for (int j = 0; j < dim; ++j) s += at(i, j) * x[j];
      r[i] = s;
    }
    return r;
  }

  Mat mul(const Mat& o) const {
    Mat r(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double s = 0;
        for (int k = 0; k < dim; ++k) s += at(i, k) * o.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  Mat transpose() const {
    Mat r(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r.at(i, j) = at(j, i);
    return r;
  }

  double det() const {
    switch (dim) {
      case 1:
        return a[0];
      case 2:
        return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
      case 3:
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
      default:
        return 0;
    }
  }
};

// Largest singular value via power iteration on A^T A (tolerance 1e-12).
double spectral_norm(const Mat& m);

// Smallest singular value via closed-form symmetric eigenvalues of A^T A.
double min_singular_value(const Mat& m);

// Eigenvalues of a symmetric d x d matrix, ascending. Closed form for d <= 3.
std::array<double, 3> sym_eigenvalues(const Mat& s);

// Axis-aligned box. Cells become cubic only if the box is a cube; grid
// construction checks that.
struct Box {
  Point lo, hi;
  int dim = 0;

  Box() = default;
  Box(const Point& l, const Point& h) : lo(l), hi(h), dim(l.dim) {}

  static Box cube(int d, double l, double h) {
    Point lo, hi;
    lo.dim = hi.dim = d;
    for (int i = 0; i < d; ++i) {
      lo[i] = l;
      hi[i] = h;
    }
    return Box(lo, hi);
  }

  bool valid() const {
    if (dim < 1 || dim > 3 || hi.dim != dim) return false;
    for (int i = 0; i < dim; ++i)
      if (!(lo[i] < hi[i])) return false;
    return true;
  }

  double side(int axis) const { return hi[axis] - lo[axis]; }

  bool cubic(double rel_tol = 1e-12) const {
    double s0 = side(0);
    for (int i = 1; i < dim; ++i)
      if (std::abs(side(i) - s0) > rel_tol * std::abs(s0)) return false;
    return true;
  }

  double diameter() const {
    double s = 0;
    for (int i = 0; i < dim; ++i) s += side(i) * side(i);
    return std::sqrt(s);
  }

  bool contains(const Point& p, double tol = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
  }

  // Distance from p to the complement of the open box; negative outside.
  double signed_interior_distance(const Point& p) const;
};

std::string format_point(const Point& p);

}  // namespace mifs
