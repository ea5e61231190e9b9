#include "mifs/contraction.hpp"

#include <algorithm>
#include <cmath>

#include "mifs/errors.hpp"
#include "mifs/markov_ifs.hpp"

namespace mifs {

AffineMap AffineMap::then_inner(const AffineMap& inner) const {
  // (this ∘ inner)(x) = L_outer (L_inner x + o_inner) + o_outer
  AffineMap r;
  r.linear = linear.mul(inner.linear);
  r.offset = linear.apply(inner.offset) + offset;
  return r;
}

Point BilinearQuadMap::eval(const Point& uv) const {
  const double u = uv[0], v = uv[1];
  if (u < -1e-12 || u > 1 + 1e-12 || v < -1e-12 || v > 1 + 1e-12)
    throw GuardError("bilinear map evaluated outside the unit square at " + format_point(uv));
  Point r = p00 * ((1 - u) * (1 - v)) + p10 * (u * (1 - v)) + p11 * (u * v) + p01 * ((1 - u) * v);
  r.dim = 2;
  return r;
}

double BilinearQuadMap::column_norm_bound() const {
  const double du = std::max((p10 - p00).norm(), (p11 - p01).norm());
  const double dv = std::max((p01 - p00).norm(), (p11 - p10).norm());
  return std::sqrt(du * du + dv * dv);
}

void BilinearQuadMap::jacobian(const Point& uv, Mat* out) const {
  const double u = uv[0], v = uv[1];
  Point cu = (p10 - p00) * (1 - v) + (p11 - p01) * v;
  Point cv = (p01 - p00) * (1 - u) + (p11 - p10) * u;
  out->dim = 2;
  out->at(0, 0) = cu[0];
  out->at(1, 0) = cu[1];
  out->at(0, 1) = cv[0];
  out->at(1, 1) = cv[1];
}

ContractionMap ContractionMap::affine(Mat linear, Point offset) {
  if (linear.dim != offset.dim || offset.dim < 1 || offset.dim > 3)
    throw InstanceError("affine map: matrix and offset dimensions disagree");
  double lip = spectral_norm(linear);
  if (!(lip < 1.0))
    throw InstanceError("affine map is not a contraction: spectral norm " + std::to_string(lip));
  return ContractionMap(AffineMap{linear, offset}, offset.dim, lip);
}

ContractionMap ContractionMap::affine1d(double a, double b) {
  Mat m(1);
  m.a[0] = a;
  return affine(m, Point(b));
}

ContractionMap ContractionMap::bilinear(Point p00, Point p10, Point p11, Point p01) {
  for (const Point* p : {&p00, &p10, &p11, &p01})
    if (p->dim != 2) throw InstanceError("bilinear map corners must be 2D");
  BilinearQuadMap q{p00, p10, p11, p01};
  double lip = q.column_norm_bound();
  if (!(lip < 1.0))
    throw InstanceError("bilinear map is not certified contracting: column bound " +
                        std::to_string(lip));
  return ContractionMap(q, 2, lip);
}

ContractionMap ContractionMap::product(ContractionMap plane, double line_a, double line_b) {
  if (plane.dim() != 2) throw InstanceError("product map requires a 2D plane component");
  if (!(std::abs(line_a) < 1.0))
    throw InstanceError("product map line component is not a contraction: |a| = " +
                        std::to_string(std::abs(line_a)));
  ProductMap pm;
  if (auto* a = std::get_if<AffineMap>(&plane.impl()))
    pm.plane = *a;
  else if (auto* b = std::get_if<BilinearQuadMap>(&plane.impl()))
    pm.plane = *b;
  else
    throw InstanceError("product map plane component must be affine or bilinear");
  pm.line_a = line_a;
  pm.line_b = line_b;
  // Coordinates act independently, so the Euclidean Lipschitz constant of
  // g x h is max(Lip g, Lip h).
  double lip = std::max(plane.lip_bound(), std::abs(line_a));
  return ContractionMap(pm, 3, lip);
}

Point ContractionMap::eval(const Point& x) const {
  if (x.dim != dim_)
    throw InstanceError("map of dimension " + std::to_string(dim_) +
                        " evaluated at point of dimension " + std::to_string(x.dim));
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AffineMap>) {
          return m.eval(x);
        } else if constexpr (std::is_same_v<T, BilinearQuadMap>) {
          return m.eval(x);
        } else {
          Point xy(x[0], x[1]);
          Point img = std::visit([&](const auto& g) { return g.eval(xy); }, m.plane);
          return Point(img[0], img[1], m.line_a * x[2] + m.line_b);
        }
      },
      impl_);
}

bool ContractionMap::is_affine_representable() const {
  if (std::holds_alternative<AffineMap>(impl_)) return true;
  if (auto* p = std::get_if<ProductMap>(&impl_))
    return std::holds_alternative<AffineMap>(p->plane);
  return false;
}

AffineMap ContractionMap::as_affine() const {
  if (auto* a = std::get_if<AffineMap>(&impl_)) return *a;
  if (auto* p = std::get_if<ProductMap>(&impl_)) {
    if (auto* g = std::get_if<AffineMap>(&p->plane)) {
      AffineMap r;
      r.linear = Mat(3);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.linear.at(i, j) = g->linear.at(i, j);
      r.linear.at(2, 2) = p->line_a;
      r.offset = Point(g->offset[0], g->offset[1], p->line_b);
      return r;
    }
  }
  throw InternalError("as_affine called on a non-affine map");
}

Point ComposedMap::eval(Point x) const {
  if (affine) return affine->eval(x);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = (*it)->eval(x);
  return x;
}

ComposedMap compose_word(const MarkovIfs& ifs, const Word& w) {
  ComposedMap r;
  r.dim = ifs.dim();
  if (w.empty()) {
    AffineMap id;
    id.linear = Mat(r.dim);
    for (int i = 0; i < r.dim; ++i) id.linear.at(i, i) = 1.0;
    id.offset.dim = r.dim;
    r.affine = id;
    r.lip = 1.0;
    r.contracting = false;
    return r;
  }
  if (!is_admissible(ifs.matrix, w))
    throw InstanceError("word " + w.str_1based() + " is not admissible");
  bool all_affine = true;
  r.lip = 1.0;
  for (int s : w.symbols) {
    const ContractionMap& f = ifs.map(s);
    r.chain.push_back(&f);
    r.lip *= f.lip_bound();
    all_affine = all_affine && f.is_affine_representable();
  }
  if (all_affine) {
    AffineMap acc = r.chain.front()->as_affine();
    for (size_t i = 1; i < r.chain.size(); ++i) acc = acc.then_inner(r.chain[i]->as_affine());
    r.affine = acc;
  }
  r.contracting = r.lip < 1.0;
  return r;
}

LipschitzCertificate certify_lipschitz(const ContractionMap& f, int density) {
  if (density < 2) throw GuardError("certify_lipschitz requires density >= 2 per axis");
  LipschitzCertificate cert;
  cert.declared = f.lip_bound();

  if (auto* pm = std::get_if<ProductMap>(&f.impl())) {
    // Coordinates are independent; certify the factors separately.
    ContractionMap plane = std::visit(
        [](const auto& g) -> ContractionMap {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, AffineMap>)
            return ContractionMap::affine(g.linear, g.offset);
          else
            return ContractionMap::bilinear(g.p00, g.p10, g.p11, g.p01);
        },
        pm->plane);
    LipschitzCertificate sub = certify_lipschitz(plane, density);
    cert.observed = std::max(sub.observed, std::abs(pm->line_a));
    cert.tolerance = sub.tolerance;
    cert.worst_p = sub.worst_p;
    cert.worst_q = sub.worst_q;
    cert.ok = cert.observed <= cert.declared + cert.tolerance;
    return cert;
  }

  if (auto* am = std::get_if<AffineMap>(&f.impl())) {
    // Exact: the ratio equals the spectral norm for some direction.
    cert.observed = spectral_norm(am->linear);
    cert.tolerance = 1e-9;
    cert.ok = cert.observed <= cert.declared + cert.tolerance;
    return cert;
  }

  // Bilinear: all pairs over a density x density grid of the unit square.
  const auto& q = std::get<BilinearQuadMap>(f.impl());
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(density) * density);
  for (int i = 0; i < density; ++i)
    for (int j = 0; j < density; ++j)
      pts.emplace_back(double(i) / (density - 1), double(j) / (density - 1));
  double worst = 0;
  for (size_t a = 0; a < pts.size(); ++a) {
    Point fa = q.eval(pts[a]);
    for (size_t b = a + 1; b < pts.size(); ++b) {
      double dd = dist(pts[a], pts[b]);
      double ratio = dist(fa, q.eval(pts[b])) / dd;
      if (ratio > worst) {
        worst = ratio;
        cert.worst_p = pts[a];
        cert.worst_q = pts[b];
      }
    }
  }
  cert.observed = worst;
  cert.tolerance = 0.05 * cert.declared;
  cert.ok = cert.observed <= cert.declared + cert.tolerance;
  return cert;
}

}  // namespace mifs
