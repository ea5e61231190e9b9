#include "mifs/geometry.hpp"

#include <algorithm>
#include <cstdio>

#include "mifs/errors.hpp"

namespace mifs {

double spectral_norm(const Mat& m) {
  const int d = m.dim;
  if (d == 1) return std::abs(m.a[0]);
  Mat s = m.transpose().mul(m);  // symmetric PSD, top eigenvalue = norm^2

  // Deterministic start; a second skewed start guards against an unlucky
  // orthogonal initial vector.
  double best = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Point v;
    v.dim = d;
    for (int i = 0; i < d; ++i) v[i] = attempt == 0 ? 1.0 : 1.0 + 0.37 * (i + 1);
    double lambda = 0;
    for (int it = 0; it < 200000; ++it) {
      Point w = s.apply(v);
      double n = w.norm();
      if (n == 0) {
        lambda = 0;
        break;
      }
      w = w * (1.0 / n);
      double next = 0;  // Rayleigh quotient of the normalized iterate
      Point sw = s.apply(w);
      for (int i = 0; i < d; ++i) next += w[i] * sw[i];
      v = w;
      if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next))) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    best = std::max(best, lambda);
  }
  return std::sqrt(std::max(0.0, best));
}

std::array<double, 3> sym_eigenvalues(const Mat& s) {
  const int d = s.dim;
  std::array<double, 3> ev{0, 0, 0};
  if (d == 1) {
    ev[0] = s.a[0];
    return ev;
  }
  if (d == 2) {
    double a = s.at(0, 0), b = s.at(0, 1), c = s.at(1, 1);
    double tr = a + c;
    double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    ev[0] = 0.5 * (tr - disc);
    ev[1] = 0.5 * (tr + disc);
    return ev;
  }
  if (d != 3) throw InternalError("sym_eigenvalues: dimension out of range");

  // Trigonometric closed form for symmetric 3x3.
  double p1 = s.at(0, 1) * s.at(0, 1) + s.at(0, 2) * s.at(0, 2) + s.at(1, 2) * s.at(1, 2);
  double q = (s.at(0, 0) + s.at(1, 1) + s.at(2, 2)) / 3.0;
  if (p1 == 0.0) {
    ev = {s.at(0, 0), s.at(1, 1), s.at(2, 2)};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  double p2 = (s.at(0, 0) - q) * (s.at(0, 0) - q) + (s.at(1, 1) - q) * (s.at(1, 1) - q) +
              (s.at(2, 2) - q) * (s.at(2, 2) - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  Mat b(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.at(i, j) = (s.at(i, j) - (i == j ? q : 0.0)) / p;
  double r = b.det() / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double e0 = q + 2.0 * p * std::cos(phi);
  double e2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  double e1 = 3.0 * q - e0 - e2;
  ev = {e2, e1, e0};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_singular_value(const Mat& m) {
  Mat s = m.transpose().mul(m);
  auto ev = sym_eigenvalues(s);
  return std::sqrt(std::max(0.0, ev[0]));
}

double Box::signed_interior_distance(const Point& p) const {
  // Inside: min wall distance. Outside: minus distance to the closed box.
  bool inside = true;
  double min_wall = 1e300;
  double out2 = 0;
  for (int i = 0; i < dim; ++i) {
    if (p[i] <= lo[i]) {
      inside = false;
      out2 += (lo[i] - p[i]) * (lo[i] - p[i]);
    } else if (p[i] >= hi[i]) {
      inside = false;
      out2 += (p[i] - hi[i]) * (p[i] - hi[i]);
    } else {
      min_wall = std::min(min_wall, std::min(p[i] - lo[i], hi[i] - p[i]));
    }
  }
  if (!inside) return -std::sqrt(out2);
  return min_wall;
}

std::string format_point(const Point& p) {
  char buf[96];
  if (p.dim == 1) std::snprintf(buf, sizeof buf, "(%.9g)", p[0]);
  else if (p.dim == 2) std::snprintf(buf, sizeof buf, "(%.9g, %.9g)", p[0], p[1]);
  else std::snprintf(buf, sizeof buf, "(%.9g, %.9g, %.9g)", p[0], p[1], p[2]);
  return buf;
}

}  // namespace mifs
