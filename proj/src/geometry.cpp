#include "supermap/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace supermap {

namespace {

constexpr double kAntipodalMargin = 1e-12;
constexpr double kSeriesMargin = 1e-4;

double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec axpy(double s, const Vec& x, const Vec& y) {
  Vec out = y;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += s * x[i];
  return out;
}

Vec scaled(double s, Vec x) {
  for (double& v : x) v *= s;
  return x;
}

void require_dim(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) throw DimensionError(std::string(what) + " has the wrong dimension");
}

// cos(sqrt(s)) and sin(sqrt(s))/sqrt(s), entire in s.
double cos_sqrt(double s) {
  if (s >= 0) return std::cos(std::sqrt(s));
  return std::cosh(std::sqrt(-s));
}

double sinc_sqrt(double s) {
  if (std::abs(s) < 1e-6) return 1 - s / 6 + s * s / 120;
  if (s > 0) {
    const double t = std::sqrt(s);
    return std::sin(t) / t;
  }
  const double t = std::sqrt(-s);
  return std::sinh(t) / t;
}

// ---- truncated multivariate series over binary64 ----

using Series = BasicPolynomial<double>;

struct SeriesOps {
  int d;
  unsigned K;

  Series constant(double c) const { return Series::constant(d, c); }
  Series mul(const Series& a, const Series& b) const { return a.mul_truncated(b, K); }
  Series dot3(const std::array<Series, 3>& a, const Vec& c) const {
    Series s(d);
    for (int i = 0; i < 3; ++i) s += a[i] * c[i];
    return s;
  }
  Series dot3(const std::array<Series, 3>& a, const std::array<Series, 3>& b) const {
    Series s(d);
    for (int i = 0; i < 3; ++i) s += mul(a[i], b[i]);
    return s;
  }
  /// sum_k coeffs[k] (s - s(0))^k by Horner.
  Series compose(const std::vector<double>& coeffs, const Series& s) const {
    const Series t = s - constant(s.constant_term());
    Series r = constant(coeffs[K]);
    for (unsigned k = K; k-- > 0;) r = mul(r, t) + constant(coeffs[k]);
    return r;
  }
};

double binom(unsigned n, unsigned k) {
  double r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Taylor coefficients at s0 of sum_n c_n s^n given c_n.
template <class F>
std::vector<double> shifted_series(F c, double s0, unsigned K, unsigned extra) {
  std::vector<double> a(K + 1, 0.0);
  for (unsigned k = 0; k <= K; ++k) {
    double acc = 0;
    double pw = 1;
    for (unsigned n = k; n <= k + extra; ++n) {
      acc += c(n) * binom(n, k) * pw;
      pw *= s0;
    }
    a[k] = acc;
  }
  return a;
}

double inv_factorial(unsigned n) { return std::exp(-std::lgamma(n + 1.0)); }

std::vector<double> cos_sqrt_taylor(double s0, unsigned K) {
  return shifted_series([](unsigned n) { return ((n & 1) ? -1.0 : 1.0) * inv_factorial(2 * n); }, s0, K, 60);
}

std::vector<double> sinc_sqrt_taylor(double s0, unsigned K) {
  return shifted_series([](unsigned n) { return ((n & 1) ? -1.0 : 1.0) * inv_factorial(2 * n + 1); }, s0, K, 60);
}

// A(c) = acos(c) / sqrt(1 - c^2), which satisfies (1 - c^2) A' = c A - 1.
std::vector<double> acos_ratio_taylor(double c0, unsigned K) {
  std::vector<double> a(K + 1, 0.0);
  const double u0 = 1 - c0;
  if (u0 < 0.5) {
    // A(1 - u) = sum b_k u^k, (2k+1) b_k = k b_{k-1}.
    constexpr unsigned N = 120;
    std::vector<double> b(N + K + 1);
    b[0] = 1;
    for (unsigned k = 1; k < b.size(); ++k) b[k] = b[k - 1] * k / (2.0 * k + 1);
    for (unsigned j = 0; j <= K; ++j) {
      double acc = 0, pw = 1;
      for (unsigned k = j; k < b.size(); ++k) {
        acc += b[k] * binom(k, j) * pw;
        pw *= u0;
      }
      a[j] = (j & 1) ? -acc : acc;
    }
    return a;
  }
  const double w = 1 - c0 * c0;
  a[0] = std::acos(c0) / std::sqrt(w);
  if (K >= 1) a[1] = (c0 * a[0] - 1) / w;
  for (unsigned k = 1; k < K; ++k) a[k + 1] = ((2.0 * k + 1) * c0 * a[k] + k * a[k - 1]) / (w * (k + 1));
  return a;
}

std::vector<double> inv_one_plus_taylor(double c0, unsigned K) {
  std::vector<double> a(K + 1);
  double p = 1 / (1 + c0);
  for (unsigned k = 0; k <= K; ++k) {
    a[k] = (k & 1) ? -p : p;
    p /= (1 + c0);
  }
  return a;
}

using SVec = std::array<Series, 3>;

SVec svec_combine(const SeriesOps& op, const Series& s1, const Vec& v1, const Series& s2, const Vec& v2) {
  SVec out{Series(op.d), Series(op.d), Series(op.d)};
  for (int i = 0; i < 3; ++i) out[i] = s1 * v1[i] + s2 * v2[i];
  return out;
}

// P_{x->y}(z) = z - (<z,y> / (1 + <x,y>)) (x + y) with one endpoint possibly a series.
SVec transport_series(const SeriesOps& op, const SVec& x, const SVec& y, const SVec& z) {
  const Series xy = op.dot3(x, y);
  if (1 + xy.constant_term() < kSeriesMargin) throw DomainError("transport too close to the cut locus");
  const Series coef = op.mul(op.dot3(z, y), op.compose(inv_one_plus_taylor(xy.constant_term(), op.K), xy));
  SVec out = z;
  for (int i = 0; i < 3; ++i) out[i] -= op.mul(coef, x[i] + y[i]);
  return out;
}

SVec constant_svec(const SeriesOps& op, const Vec& v) {
  return {op.constant(v[0]), op.constant(v[1]), op.constant(v[2])};
}

}  // namespace

GeometryBackend GeometryBackend::flat(int m, int rank) {
  if (m < 1) throw DimensionError("flat backend needs m >= 1");
  GeometryBackend g;
  g.kind = GeometryKind::Flat;
  g.m = m;
  g.bundle_rank = rank < 0 ? m : rank;
  return g;
}

GeometryBackend GeometryBackend::sphere2() {
  GeometryBackend g;
  g.kind = GeometryKind::Sphere2;
  g.m = 2;
  g.bundle_rank = 2;
  return g;
}

GeometryBackend GeometryBackend::parse(const std::string& name) {
  if (name == "sphere2") return sphere2();
  if (name.rfind("flat:", 0) == 0) {
    const std::string rest = name.substr(5);
    const auto colon = rest.find(':');
    try {
      if (colon == std::string::npos) return flat(std::stoi(rest));
      return flat(std::stoi(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
    } catch (const std::logic_error&) {
    }
  }
  throw PreconditionError("unknown geometry '" + name + "' (expected flat:M[:R] or sphere2)");
}

std::string GeometryBackend::name() const {
  if (kind == GeometryKind::Sphere2) return "sphere2";
  return "flat:" + std::to_string(m) + (bundle_rank == m ? "" : ":" + std::to_string(bundle_rank));
}

void GeometryBackend::check_point(const Vec& x) const {
  require_dim(x, ambient_dim(), "point");
  if (kind == GeometryKind::Sphere2 && std::abs(norm(x) - 1) > tolerance * 10)
    throw DomainError("sphere point is not unit length");
}

void GeometryBackend::check_tangent(const Vec& x, const Vec& v) const {
  require_dim(v, ambient_dim(), "tangent vector");
  if (kind == GeometryKind::Sphere2 && std::abs(dot(x, v)) > tolerance * 10 * std::max(1.0, norm(v)))
    throw DomainError("tangent vector is not orthogonal to its base point");
}

std::vector<Vec> tangent_frame(const GeometryBackend& g, const Vec& x) {
  g.check_point(x);
  std::vector<Vec> e;
  if (g.kind == GeometryKind::Flat) {
    for (int i = 0; i < g.m; ++i) {
      Vec v(g.m, 0.0);
      v[i] = 1;
      e.push_back(v);
    }
    return e;
  }
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(x[i]) < std::abs(x[axis])) axis = i;
  Vec a(3, 0.0);
  a[axis] = 1;
  Vec e1 = cross(a, x);
  e1 = scaled(1 / norm(e1), e1);
  e.push_back(e1);
  e.push_back(cross(x, e1));
  return e;
}

Vec to_frame(const GeometryBackend& g, const Vec& x, const Vec& v) {
  Vec out;
  for (const auto& e : tangent_frame(g, x)) out.push_back(dot(e, v));
  return out;
}

Vec from_frame(const GeometryBackend& g, const Vec& x, const Vec& coords) {
  const auto e = tangent_frame(g, x);
  require_dim(coords, e.size(), "frame coordinates");
  Vec out(g.ambient_dim(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) out = axpy(coords[i], e[i], out);
  return out;
}

Vec fibre_to_frame(const GeometryBackend& g, const Vec& x, const Vec& w) {
  if (g.kind == GeometryKind::Flat) {
    require_dim(w, g.bundle_rank, "fibre vector");
    return w;
  }
  return to_frame(g, x, w);
}

Vec fibre_from_frame(const GeometryBackend& g, const Vec& x, const Vec& coords) {
  if (g.kind == GeometryKind::Flat) {
    require_dim(coords, g.bundle_rank, "fibre coordinates");
    return coords;
  }
  return from_frame(g, x, coords);
}

Vec geo_exp(const GeometryBackend& g, const Vec& x, const Vec& v) {
  g.check_point(x);
  g.check_tangent(x, v);
  if (g.kind == GeometryKind::Flat) return axpy(1, v, x);
  const double s = dot(v, v);
  return axpy(sinc_sqrt(s), v, scaled(cos_sqrt(s), x));
}

Vec geo_log(const GeometryBackend& g, const Vec& x, const Vec& y) {
  g.check_point(x);
  g.check_point(y);
  if (g.kind == GeometryKind::Flat) return axpy(-1, x, y);
  const double c = dot(x, y);
  const Vec w = axpy(-c, x, y);
  const double sn = norm(w);
  if (1 + c < kAntipodalMargin || (c < 0 && sn < 1e-7)) throw DomainError("geo_log: antipodal points");
  if (sn == 0) return Vec(3, 0.0);
  return scaled(std::atan2(sn, c) / sn, w);
}

Vec geo_pt(const GeometryBackend& g, const Vec& x, const Vec& y, const Vec& w) {
  g.check_point(x);
  g.check_point(y);
  if (g.kind == GeometryKind::Flat) {
    require_dim(w, g.bundle_rank, "fibre vector");
    return w;
  }
  const double c = dot(x, y);
  if (1 + c < kAntipodalMargin) throw DomainError("geo_pt: antipodal points");
  Vec sum = axpy(1, x, y);
  return axpy(-dot(w, y) / (1 + c), sum, w);
}

BundlePoint bundle_exp(const GeometryBackend& g, const BundlePoint& a, const BundleTangent& xi) {
  const Vec q = geo_exp(g, a.base, xi.horizontal);
  require_dim(xi.vertical, a.fibre.size(), "vertical part");
  return {q, geo_pt(g, a.base, q, axpy(1, xi.vertical, a.fibre))};
}

double bundle_metric(const GeometryBackend&, const BundleTangent& a, const BundleTangent& b) {
  return dot(a.horizontal, b.horizontal) + dot(a.vertical, b.vertical);
}

std::vector<TrivializedSample> local_trivialize(const GeometryBackend& g, const std::vector<Vec>& f,
                                                const std::vector<BundlePoint>& sigma) {
  if (f.size() != sigma.size()) throw DimensionError("local_trivialize: sample counts differ");
  std::vector<TrivializedSample> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    try {
      out.push_back({geo_log(g, f[i], sigma[i].base), geo_pt(g, sigma[i].base, f[i], sigma[i].fibre)});
    } catch (const DomainError& e) {
      throw DomainError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<BundlePoint> local_trivialize_inverse(const GeometryBackend& g, const std::vector<Vec>& f,
                                                  const std::vector<TrivializedSample>& samples) {
  if (f.size() != samples.size()) throw DimensionError("local_trivialize_inverse: sample counts differ");
  std::vector<BundlePoint> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    try {
      const Vec base = geo_exp(g, f[i], samples[i].chart);
      out.push_back({base, geo_pt(g, f[i], base, samples[i].fibre)});
    } catch (const DomainError& e) {
      throw DomainError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

TransferValue transfer_value(const GeometryBackend& g, const Vec& a, const Vec& c, const Vec& z) {
  TransferValue out;
  const Vec y = geo_exp(g, a, from_frame(g, a, z));
  out.chart = to_frame(g, c, geo_log(g, c, y));
  const int r = g.rank();
  out.fibre.assign(r, Vec(r, 0.0));
  for (int j = 0; j < r; ++j) {
    Vec e(r, 0.0);
    e[j] = 1;
    const Vec moved = geo_pt(g, y, c, geo_pt(g, a, y, fibre_from_frame(g, a, e)));
    const Vec coords = fibre_to_frame(g, c, moved);
    for (int i = 0; i < r; ++i) out.fibre[i][j] = coords[i];
  }
  return out;
}

TruncatedPolyMap<double> transfer_table(const GeometryBackend& g, const Vec& a, const Vec& c, const Vec& z0, int r) {
  if (r < 0) throw PreconditionError("transfer_table: negative order");
  const int d = g.dim();
  const int rk = g.rank();
  require_dim(z0, d, "chart coordinates");
  TruncatedPolyMap<double> T;
  T.order = r;
  T.even_dim = d;
  T.odd_dim = rk;
  T.source_point = z0;
  using Inc = TruncatedPolyMap<double>::Increment;

  if (g.kind == GeometryKind::Flat) {
    g.check_point(a);
    g.check_point(c);
    for (int i = 0; i < d; ++i) {
      T.base.push_back(a[i] + z0[i] - c[i]);
      Inc inc(rk);
      if (r >= 1) inc.add_term(0, Series::variable(d, i));
      T.increments.push_back(inc);
    }
    for (int i = 0; i < rk; ++i) {
      T.base.push_back(0);
      Inc inc(rk);
      inc.add_term(Mask{1} << i, Series::constant(d, 1));
      T.increments.push_back(inc);
    }
    return T;
  }

  if (norm(z0) > std::numbers::pi - kSeriesMargin) throw DomainError("transfer_table: point outside the chart domain");
  const SeriesOps op{d, static_cast<unsigned>(r)};
  const auto ea = tangent_frame(g, a);
  const auto ec = tangent_frame(g, c);

  std::array<Series, 2> Z{op.constant(z0[0]), op.constant(z0[1])};
  if (r >= 1)
    for (int i = 0; i < 2; ++i) Z[i] += Series::variable(d, i);
  const SVec V = svec_combine(op, Z[0], ea[0], Z[1], ea[1]);
  const Series s = op.dot3(V, V);
  const Series Cs = op.compose(cos_sqrt_taylor(s.constant_term(), op.K), s);
  const Series Ss = op.compose(sinc_sqrt_taylor(s.constant_term(), op.K), s);
  SVec y;
  for (int i = 0; i < 3; ++i) y[i] = Cs * a[i] + op.mul(Ss, V[i]);

  const Series cc = op.dot3(y, c);
  if (1 + cc.constant_term() < kSeriesMargin) throw DomainError("transfer_table: image too close to the cut locus");
  const Series A = op.compose(acos_ratio_taylor(cc.constant_term(), op.K), cc);
  for (int i = 0; i < 2; ++i) {
    const Series F = op.mul(A, op.dot3(y, ec[i]));
    T.base.push_back(F.constant_term());
    Inc inc(rk);
    inc.add_term(0, F - op.constant(F.constant_term()));
    T.increments.push_back(inc);
  }

  const SVec A3 = constant_svec(op, a);
  const SVec C3 = constant_svec(op, c);
  std::vector<SVec> moved;
  for (int j = 0; j < 2; ++j) moved.push_back(transport_series(op, y, C3, transport_series(op, A3, y, constant_svec(op, ea[j]))));
  for (int i = 0; i < 2; ++i) {
    T.base.push_back(0);
    Inc inc(rk);
    for (int j = 0; j < 2; ++j) inc.add_term(Mask{1} << j, op.dot3(moved[j], ec[i]));
    T.increments.push_back(inc);
  }
  return T;
}

namespace {

ModelPoint split_model(int n, const std::vector<GrassmannD>& vals, int d) {
  ModelPoint out;
  out.n = n;
  out.even.assign(vals.begin(), vals.begin() + d);
  out.odd.assign(vals.begin() + d, vals.end());
  return out;
}

void check_lambda_point(const GeometryBackend& g, const BundleLambdaPoint& mu) {
  g.check_point(mu.body);
  if (static_cast<int>(mu.even_nil.size()) != g.dim() || static_cast<int>(mu.odd.size()) != g.rank())
    throw DimensionError("Lambda-point has the wrong number of coordinates");
  for (const auto& e : mu.even_nil)
    if (e.generators() != mu.n || !e.is_even() || e.body() != 0) throw ParityError("even nilpotent part malformed");
  for (const auto& o : mu.odd)
    if (o.generators() != mu.n || !o.is_odd()) throw ParityError("odd part malformed");
}

}  // namespace

ModelPoint superchart_pointwise(const GeometryBackend& g, const Vec& b, const BundleLambdaPoint& mu, int r) {
  check_lambda_point(g, mu);
  if (r < 0) r = default_order(mu.n);
  const auto T = transfer_table(g, mu.body, b, Vec(g.dim(), 0.0), r);
  return split_model(mu.n, exp_pair<double>(T, mu.even_nil, mu.odd, mu.n), g.dim());
}

BundleLambdaPoint superchart_inverse(const GeometryBackend& g, const Vec& b, const ModelPoint& tau, int r) {
  tau.validate();
  if (tau.p() != g.dim() || tau.q() != g.rank()) throw DimensionError("model point has the wrong shape");
  if (r < 0) r = default_order(tau.n);
  const Vec z0 = tau.body();
  BundleLambdaPoint mu;
  mu.n = tau.n;
  mu.body = geo_exp(g, b, from_frame(g, b, z0));
  std::vector<GrassmannD> nil;
  for (const auto& e : tau.even) nil.push_back(soul(e));
  const auto T = transfer_table(g, b, mu.body, z0, r);
  const auto vals = exp_pair<double>(T, nil, tau.odd, tau.n);
  for (int i = 0; i < g.dim(); ++i) mu.even_nil.push_back(soul(vals[i]));
  mu.odd.assign(vals.begin() + g.dim(), vals.end());
  return mu;
}

ModelPoint chart_transition_pointwise(const GeometryBackend& geo, const Vec& f, const Vec& g, const ModelPoint& kappa,
                                      int r) {
  kappa.validate();
  if (kappa.p() != geo.dim() || kappa.q() != geo.rank()) throw DimensionError("model point has the wrong shape");
  if (r < 0) r = default_order(kappa.n);
  std::vector<GrassmannD> nil;
  for (const auto& e : kappa.even) nil.push_back(soul(e));
  const auto T = transfer_table(geo, f, g, kappa.body(), r);
  return split_model(kappa.n, exp_pair<double>(T, nil, kappa.odd, kappa.n), geo.dim());
}

}  // namespace supermap
