#pragma once

#include "supermap/grassmann.hpp"
#include "supermap/jetcalc.hpp"
#include "supermap/superfun.hpp"

#include <string>
#include <vector>

namespace supermap {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;  // row-major

enum class GeometryKind { Flat, Sphere2 };

/// Flat R^m with a trivial rank-r bundle, or the unit sphere in R^3 whose
/// bundle is its own tangent bundle with the Levi-Civita connection.
struct GeometryBackend {
  GeometryKind kind = GeometryKind::Flat;
  int m = 1;
  int bundle_rank = 1;
  double tolerance = 1e-9;

  static GeometryBackend flat(int m, int rank = -1);
  static GeometryBackend sphere2();
  /// "flat:M", "flat:M:R" or "sphere2".
  static GeometryBackend parse(const std::string& name);

  std::string name() const;
  int dim() const { return kind == GeometryKind::Sphere2 ? 2 : m; }
  int rank() const { return kind == GeometryKind::Sphere2 ? 2 : bundle_rank; }
  int ambient_dim() const { return kind == GeometryKind::Sphere2 ? 3 : m; }

  void check_point(const Vec& x) const;
  void check_tangent(const Vec& x, const Vec& v) const;
};

/// Orthonormal frame of T_x (dim vectors in ambient coordinates). For the
/// sphere: e1 = normalize(a x b) with a the coordinate axis least aligned
/// with x, e2 = x cross e1.
std::vector<Vec> tangent_frame(const GeometryBackend& g, const Vec& x);
Vec to_frame(const GeometryBackend& g, const Vec& x, const Vec& v);
Vec from_frame(const GeometryBackend& g, const Vec& x, const Vec& coords);
/// Same for the bundle fibre over x (sphere: the tangent frame).
Vec fibre_to_frame(const GeometryBackend& g, const Vec& x, const Vec& w);
Vec fibre_from_frame(const GeometryBackend& g, const Vec& x, const Vec& coords);

Vec geo_exp(const GeometryBackend& g, const Vec& x, const Vec& v);
/// Throws DomainError for antipodal (or numerically near-antipodal) pairs.
Vec geo_log(const GeometryBackend& g, const Vec& x, const Vec& y);
/// Parallel transport of a fibre vector along the minimal geodesic x -> y.
Vec geo_pt(const GeometryBackend& g, const Vec& x, const Vec& y, const Vec& w);

struct BundlePoint {
  Vec base;
  Vec fibre;
};

struct BundleTangent {
  Vec horizontal;
  Vec vertical;
};

BundlePoint bundle_exp(const GeometryBackend& g, const BundlePoint& a, const BundleTangent& xi);
/// G(xi1, xi2) = g(h1, h2) + <v1, v2>.
double bundle_metric(const GeometryBackend& g, const BundleTangent& a, const BundleTangent& b);

struct TrivializedSample {
  Vec chart;  // exp_f^{-1}(pi sigma), ambient
  Vec fibre;  // P_{pi sigma -> f}(sigma)
};

/// Pointwise trivialization over sampled base map f. DomainError names the
/// offending sample index.
std::vector<TrivializedSample> local_trivialize(const GeometryBackend& g, const std::vector<Vec>& f,
                                                const std::vector<BundlePoint>& sigma);
std::vector<BundlePoint> local_trivialize_inverse(const GeometryBackend& g, const std::vector<Vec>& f,
                                                  const std::vector<TrivializedSample>& samples);

using GrassmannD = BasicGrassmann<double>;
using ModelPoint = BasicSuperPoint<double>;

/// A Lambda_n-point of the bundle supermanifold: body on Y, even nilpotent
/// part in the tangent frame at the body, odd part in the fibre frame.
struct BundleLambdaPoint {
  int n = 0;
  Vec body;
  std::vector<GrassmannD> even_nil;
  std::vector<GrassmannD> odd;
};

/// Closed-form value of the transfer map from the frame at a to the frame
/// at c: z -> (log_c(exp_a z), P_{y->c} P_{a->y}) with y = exp_a(z).
struct TransferValue {
  Vec chart;
  Matrix fibre;
};
TransferValue transfer_value(const GeometryBackend& g, const Vec& a, const Vec& c, const Vec& z);

/// Taylor table of the transfer map at z0 up to order r: even slots are the
/// increments of z, odd slots the fibre coordinates. Exact for the flat
/// backend; series arithmetic in binary64 for the sphere.
TruncatedPolyMap<double> transfer_table(const GeometryBackend& g, const Vec& a, const Vec& c, const Vec& z0, int r);

/// Default truncation r = floor(N/2) for N Grassmann generators.
inline int default_order(int generators) { return generators / 2; }

/// Chart at b applied to a Lambda-point near b (r < 0 selects the default).
ModelPoint superchart_pointwise(const GeometryBackend& g, const Vec& b, const BundleLambdaPoint& mu, int r = -1);
BundleLambdaPoint superchart_inverse(const GeometryBackend& g, const Vec& b, const ModelPoint& tau, int r = -1);

/// Chart transition f -> g on a model point at f.
ModelPoint chart_transition_pointwise(const GeometryBackend& geo, const Vec& f, const Vec& g, const ModelPoint& kappa,
                                      int r = -1);

}  // namespace supermap
