#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/geometry.hpp"
#include "supermap/random.hpp"

#include <cmath>
#include <numbers>

using namespace supermap;

namespace {

constexpr double kTol = 1e-9;

double norm(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dist(const Vec& a, const Vec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Vec unit(Vec v) {
  const double n = norm(v);
  for (auto& x : v) x /= n;
  return v;
}

Vec random_sphere_point(Rng& rng) {
  for (;;) {
    Vec v{rng.uniform_real(-1, 1), rng.uniform_real(-1, 1), rng.uniform_real(-1, 1)};
    if (norm(v) > 0.2) return unit(v);
  }
}

Vec tangent(const GeometryBackend& g, Rng& rng, const Vec& x, double length) {
  Vec c{rng.uniform_real(-1, 1), rng.uniform_real(-1, 1)};
  const double n = std::max(norm(c), 1e-3);
  for (auto& t : c) t *= length / n;
  return from_frame(g, x, c);
}

double coeff_diff(const GrassmannD& a, const GrassmannD& b) {
  double d = 0;
  for (const auto& [S, c] : a.terms()) d = std::max(d, std::abs(c - b.coefficient(S)));
  for (const auto& [S, c] : b.terms()) d = std::max(d, std::abs(c - a.coefficient(S)));
  return d;
}

}  // namespace

TEST_CASE("sphere exponential: quarter great circle") {
  const auto g = GeometryBackend::sphere2();
  const Vec north{0, 0, 1};
  const Vec y = geo_exp(g, north, {std::numbers::pi / 2, 0, 0});
  CHECK(dist(y, {1, 0, 0}) < kTol);
  CHECK(dist(geo_log(g, north, y), {std::numbers::pi / 2, 0, 0}) < kTol);
}

TEST_CASE("flat exponential and logarithm") {
  const auto g = GeometryBackend::flat(3);
  CHECK(geo_exp(g, {1, 2, 3}, {0.5, -1, 2}) == Vec{1.5, 1, 5});
  CHECK(geo_log(g, {1, 2, 3}, {0, 0, 0}) == Vec{-1, -2, -3});
  CHECK(geo_pt(g, {1, 2, 3}, {0, 0, 0}, {4, 5, 6}) == Vec{4, 5, 6});
}

TEST_CASE("sphere roundtrip and transport") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    const Vec x = random_sphere_point(rng);
    const Vec v = tangent(g, rng, x, rng.uniform_real(0, std::numbers::pi - 0.01));
    const Vec y = geo_exp(g, x, v);
    REQUIRE(dist(geo_log(g, x, y), v) < kTol);
    const Vec w = tangent(g, rng, x, 1.0);
    const Vec pw = geo_pt(g, x, y, w);
    REQUIRE(std::abs(norm(pw) - norm(w)) < kTol);
    REQUIRE(std::abs(pw[0] * y[0] + pw[1] * y[1] + pw[2] * y[2]) < kTol);
    REQUIRE(dist(geo_pt(g, y, x, pw), w) < kTol);
  }
}

TEST_CASE("antipodal points are outside the log domain") {
  const auto g = GeometryBackend::sphere2();
  CHECK_THROWS_AS(geo_log(g, {0, 0, 1}, {0, 0, -1}), DomainError);
  CHECK_THROWS_AS(g.check_point({0, 0, 2}), DomainError);
}

TEST_CASE("backend parsing") {
  CHECK(GeometryBackend::parse("sphere2").kind == GeometryKind::Sphere2);
  const auto f = GeometryBackend::parse("flat:3:2");
  CHECK(f.m == 3);
  CHECK(f.rank() == 2);
  CHECK(GeometryBackend::parse("flat:2").rank() == 2);
  CHECK_THROWS(GeometryBackend::parse("torus"));
}

TEST_CASE("bundle exponential") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(67);
  const Vec x = random_sphere_point(rng);
  const Vec w = tangent(g, rng, x, 0.7), vert = tangent(g, rng, x, 0.3), h = tangent(g, rng, x, 1.2);

  const BundlePoint a = bundle_exp(g, {x, w}, {Vec(3, 0.0), vert});
  CHECK(dist(a.base, x) < kTol);
  CHECK(dist(a.fibre, {w[0] + vert[0], w[1] + vert[1], w[2] + vert[2]}) < kTol);

  const BundlePoint b = bundle_exp(g, {x, Vec(3, 0.0)}, {h, Vec(3, 0.0)});
  CHECK(dist(b.base, geo_exp(g, x, h)) < kTol);
  CHECK(norm(b.fibre) < kTol);

  const BundlePoint c = bundle_exp(g, {x, w}, {h, Vec(3, 0.0)});
  CHECK(std::abs(norm(c.fibre) - norm(w)) < kTol);
}

TEST_CASE("local trivialization") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(71);
  std::vector<Vec> f;
  std::vector<BundlePoint> sigma;
  for (int i = 0; i < 4; ++i) {
    f.push_back(random_sphere_point(rng));
    sigma.push_back({f.back(), tangent(g, rng, f.back(), 1.0)});
  }
  const auto triv = local_trivialize(g, f, sigma);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(norm(triv[i].chart) < kTol);
    CHECK(dist(triv[i].fibre, sigma[i].fibre) < kTol);
  }

  std::vector<BundlePoint> moved;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec y = geo_exp(g, f[i], tangent(g, rng, f[i], 2.0));
    moved.push_back({y, tangent(g, rng, y, 1.0)});
  }
  const auto back = local_trivialize_inverse(g, f, local_trivialize(g, f, moved));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(dist(back[i].base, moved[i].base) < kTol);
    CHECK(dist(back[i].fibre, moved[i].fibre) < kTol);
  }

  const auto flat = GeometryBackend::flat(2, 1);
  const auto ft = local_trivialize(flat, {{1, 1}}, {{{3, -1}, {5}}});
  CHECK(ft[0].chart == Vec{2, -2});
  CHECK(ft[0].fibre == Vec{5});
}

TEST_CASE("trivialization names the failing sample") {
  const auto g = GeometryBackend::sphere2();
  const std::vector<Vec> f{{0, 0, 1}, {0, 0, 1}};
  const std::vector<BundlePoint> sigma{{{1, 0, 0}, {0, 0, 0}}, {{0, 0, -1}, {0, 0, 0}}};
  try {
    local_trivialize(g, f, sigma);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("sample 1") != std::string::npos);
  }
}

TEST_CASE("flat superchart is affine") {
  const auto g = GeometryBackend::flat(2, 1);
  BundleLambdaPoint mu;
  mu.n = 2;
  mu.body = {1.5, -2};
  GrassmannD e(2), o(2);
  e.add_term(0b11, 0.25);
  o.add_term(0b01, 3.0);
  mu.even_nil = {e, GrassmannD(2)};
  mu.odd = {o};
  const ModelPoint tau = superchart_pointwise(g, {1, 1}, mu);
  CHECK(tau.even[0].body() == doctest::Approx(0.5));
  CHECK(tau.even[1].body() == doctest::Approx(-3));
  CHECK(coeff_diff(soul(tau.even[0]), e) < kTol);
  CHECK(soul(tau.even[1]).is_zero());
  CHECK(coeff_diff(tau.odd[0], o) < kTol);
}

TEST_CASE("sphere superchart without nilpotent part is the log chart") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(73);
  const Vec b = random_sphere_point(rng);
  BundleLambdaPoint mu;
  mu.n = 3;
  mu.body = geo_exp(g, b, tangent(g, rng, b, 0.8));
  mu.even_nil = {GrassmannD(3), GrassmannD(3)};
  mu.odd = {GrassmannD(3), GrassmannD(3)};
  const ModelPoint tau = superchart_pointwise(g, b, mu);
  const Vec expected = to_frame(g, b, geo_log(g, b, mu.body));
  CHECK(tau.even[0].body() == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(tau.even[1].body() == doctest::Approx(expected[1]).epsilon(1e-12));
  CHECK(soul(tau.even[0]).is_zero());
}

TEST_CASE("sphere superchart roundtrip") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(79);
  for (int t = 0; t < 50; ++t) {
    const int n = rng.uniform(0, 4);
    ModelPoint tau;
    tau.n = n;
    for (int i = 0; i < 2; ++i) {
      GrassmannD e(n);
      e.add_term(0, rng.uniform_real(-0.5, 0.5));
      for (Mask S = 1; S <= full_mask(n); ++S)
        if (subset_size(S) % 2 == 0) e.add_term(S, rng.uniform_real(-0.3, 0.3));
      tau.even.push_back(e);
      GrassmannD o(n);
      for (Mask S = 1; S <= full_mask(n); ++S)
        if (subset_size(S) % 2 == 1) o.add_term(S, rng.uniform_real(-1, 1));
      tau.odd.push_back(o);
    }
    const Vec b = random_sphere_point(rng);
    const ModelPoint back = superchart_pointwise(g, b, superchart_inverse(g, b, tau));
    for (int i = 0; i < 2; ++i) {
      REQUIRE(coeff_diff(back.even[i], tau.even[i]) < kTol);
      REQUIRE(coeff_diff(back.odd[i], tau.odd[i]) < kTol);
    }
  }
}

TEST_CASE("transfer table: value and first derivative") {
  const auto g = GeometryBackend::sphere2();
  Rng rng(83);
  const Vec a = random_sphere_point(rng);
  const Vec c = geo_exp(g, a, tangent(g, rng, a, 0.6));
  const Vec z0{0.2, -0.1};
  const auto T = transfer_table(g, a, c, z0, 2);
  const TransferValue v0 = transfer_value(g, a, c, z0);
  CHECK(T.base[0] == doctest::Approx(v0.chart[0]).epsilon(1e-12));
  CHECK(T.base[1] == doctest::Approx(v0.chart[1]).epsilon(1e-12));
  const double h = 1e-5;
  for (int i = 0; i < 2; ++i) {
    Vec zp = z0, zm = z0;
    zp[i] += h;
    zm[i] -= h;
    const double fd = (transfer_value(g, a, c, zp).chart[0] - transfer_value(g, a, c, zm).chart[0]) / (2 * h);
    CHECK(T.increments[0].body().coefficient(MultiIndex::unit(2, i)) == doctest::Approx(fd).epsilon(1e-8));
  }
}
