#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mifs/geometry.hpp"
#include "mifs/symbolic.hpp"

namespace mifs {

// x -> linear x + offset on all of R^d.
struct AffineMap {
  Mat linear;
  Point offset;

  int dim() const { return offset.dim; }
  Point eval(const Point& x) const { return linear.apply(x) + offset; }
  AffineMap then_inner(const AffineMap& inner) const;  // this ∘ inner
};

// Bilinear interpolation of the unit square onto the quadrilateral with
// corner images p00, p10, p11, p01. 2D only; domain is [0,1]^2.
struct BilinearQuadMap {
  Point p00, p10, p11, p01;

  Point eval(const Point& uv) const;
  // sqrt(max_v ||p10-p00 + v (p11-p01-p10+p00)||^2-ish column bound):
  // columns of the Jacobian are linear in v resp. u, so their sup norms
  // are attained at corners; the Frobenius combination bounds the
  // operator norm on the whole square.
  double column_norm_bound() const;
  void jacobian(const Point& uv, Mat* out) const;
};

// plane map x line map, acting on R^3 as (g(x,y), a z + b).
struct ProductMap {
  std::variant<AffineMap, BilinearQuadMap> plane;
  double line_a = 0;
  double line_b = 0;
};

// Evaluable contraction with a certified Lipschitz upper bound.
class ContractionMap {
 public:
  using Impl = std::variant<AffineMap, BilinearQuadMap, ProductMap>;

  static ContractionMap affine(Mat linear, Point offset);
  static ContractionMap affine1d(double a, double b);
  static ContractionMap bilinear(Point p00, Point p10, Point p11, Point p01);
  static ContractionMap product(ContractionMap plane, double line_a, double line_b);

  int dim() const { return dim_; }
  double lip_bound() const { return lip_; }
  const Impl& impl() const { return impl_; }

  Point eval(const Point& x) const;

  bool is_affine_representable() const;
  // Affine (or product-of-affine) maps flattened to a single d x d affine.
  AffineMap as_affine() const;

 private:
  ContractionMap(Impl impl, int dim, double lip)
      : impl_(std::move(impl)), dim_(dim), lip_(lip) {}

  Impl impl_;
  int dim_;
  double lip_;
};

// f_{w_0} ∘ ... ∘ f_{w_{n-1}} with the product Lipschitz bound. The empty
// word composes to the identity and is flagged non-contracting.
struct ComposedMap {
  std::vector<const ContractionMap*> chain;  // outermost first
  std::optional<AffineMap> affine;           // set when every factor is affine
  double lip = 1.0;
  bool contracting = false;
  int dim = 0;

  Point eval(Point x) const;
};

struct MarkovIfs;  // defined in markov_ifs.hpp

ComposedMap compose_word(const MarkovIfs& ifs, const Word& w);

// Samples |f(p)-f(q)|/|p-q| over a density^d grid of the map's domain and
// checks the observed ratio against the declared bound (exact spectral
// norm for affine maps, 5% sampling slack for bilinear ones).
struct LipschitzCertificate {
  double observed = 0;
  double declared = 0;
  double tolerance = 0;
  bool ok = false;
  Point worst_p, worst_q;
};
LipschitzCertificate certify_lipschitz(const ContractionMap& f, int density);

}  // namespace mifs
