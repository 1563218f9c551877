#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/random.hpp"
#include "test_support.hpp"

using namespace test;

namespace {

Polynomial one(int p) { return Polynomial::constant(p, R(1)); }

/// Phi*(y) = x + (x+1) theta^1 theta^2.
SuperMorphism vector_field() {
  const Polynomial x = X(1, 0);
  return SuperMorphism{1, 2, 1, 0, {SF(1, 2, {{{}, x}, {{1, 2}, x + one(1)}})}, {}};
}

}  // namespace

TEST_CASE("composition examples") {
  const SuperMorphism id = SuperMorphism::identity(1, 1);
  CHECK(morphism_compose(id, id) == id);

  const Polynomial x = X(1, 0);
  const SuperMorphism phi{1, 0, 1, 0, {SF(1, 0, {{{}, x * x}})}, {}};
  const SuperMorphism psi{1, 0, 1, 0, {SF(1, 0, {{{}, x + one(1)}})}, {}};
  CHECK(morphism_compose(psi, phi).even[0] == SF(1, 0, {{{}, x * x + one(1)}}));

  // Odd pullbacks: Phi*(theta') = x theta, Psi*(theta'') = y theta'.
  const SuperMorphism phi2{1, 1, 1, 1, {SF(1, 1, {{{}, x * x}})}, {SF(1, 1, {{{1}, x}})}};
  const SuperMorphism psi2{1, 1, 1, 1, {SF(1, 1, {{{}, x}})}, {SF(1, 1, {{{1}, x}})}};
  const SuperMorphism both = morphism_compose(psi2, phi2);
  CHECK(both.odd[0] == sf_substitute(psi2.odd[0], phi2));
  CHECK(both.odd[0] == SF(1, 1, {{{1}, x * x * x}}));
}

TEST_CASE("pushforward examples") {
  const Polynomial x = X(1, 0);
  const SuperMorphism phi{1, 1, 1, 1, {SF(1, 1, {{{}, x}})}, {SF(1, 1, {{{1}, x}})}};
  const Rational a = R(3), b = R(-2), c = R(1, 2);
  const SuperPoint mu = point(2, {G(2, {{{}, a}, {{1, 2}, c}})}, {G(2, {{{1}, b}})});
  const SuperPoint nu = pushforward(phi, mu);
  CHECK(nu == point(2, {G(2, {{{}, a}, {{1, 2}, c}})}, {G(2, {{{1}, a * b}})}));
  CHECK(pushforward_general(phi, mu) == nu);

  CHECK(pushforward(SuperMorphism::identity(1, 1), mu) == mu);

  const SuperMorphism sq{1, 0, 1, 0, {SF(1, 0, {{{}, x * x}})}, {}};
  CHECK(pushforward(sq, point(2, {Grassmann::scalar(2, a)}, {})) == point(2, {Grassmann::scalar(2, a * a)}, {}));
}

TEST_CASE("pushforward is functorial on random data") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(1, 2), q = rng.uniform(0, 2), n = rng.uniform(0, 5);
    const SuperMorphism phi = random_morphism(rng, p, q, 1, 2, 2), psi = random_morphism(rng, 1, 2, 2, 1, 2);
    const SuperPoint mu = random_point(rng, n, p, q);
    REQUIRE(pushforward(morphism_compose(psi, phi), mu) == pushforward(psi, pushforward(phi, mu)));
    REQUIRE(pushforward_general(phi, mu) == pushforward(phi, mu));
  }
}

TEST_CASE("malformed morphisms are rejected") {
  const SuperMorphism bad{1, 1, 1, 0, {SuperFunction::odd_coordinate(1, 1, 0)}, {}};
  CHECK_THROWS_AS(bad.validate(), ParityError);
  const SuperMorphism wrong{1, 1, 2, 0, {SuperFunction::even_coordinate(1, 1, 0)}, {}};
  CHECK_THROWS_AS(wrong.validate(), DimensionError);
}

TEST_CASE("eta splitting") {
  Rng rng(37);
  for (int t = 0; t < 50; ++t) {
    const int n = rng.uniform(0, 3), q = rng.uniform(0, 2);
    const SuperFunction f = random_superfunction(rng, 1, n + q, 3, rng.uniform(0, 1), 5);
    REQUIRE(eta_join(eta_split(f, n), n) == f);
  }
}

TEST_CASE("n = 0 gives the pullback itself") {
  Rng rng(41);
  const SuperMorphism phi = random_morphism(rng, 1, 2, 1, 1, 2);
  const std::vector<SuperFunction> probes{random_superfunction(rng, 1, 1, 2, 0, 3)};
  const auto coefs = eta_decompose(phi, 0, probes);
  REQUIRE(coefs.size() == 1);
  CHECK(coefs[0].table[0].second == sf_substitute(probes[0], phi));
}

TEST_CASE("classical coefficient has order 0") {
  const Polynomial x = X(1, 0);
  const SuperMorphism phi{1, 0, 1, 0, {SF(1, 0, {{{}, x * x + x}})}, {}};
  const auto coefs = eta_decompose(phi, 0, {});
  CHECK(order_bound_check(coefs[0], 0, JetMode::Even).pass);
  CHECK(order_bound_check(coefs[0], 0, JetMode::Super).pass);
}

TEST_CASE("vector-field coefficient: order 1, not 0") {
  const auto coefs = eta_decompose(vector_field(), 2, {});
  const EtaCoefficient& xi = coefs.at(0b11);
  CHECK(order_bound_check(xi, 1, JetMode::Even).pass);
  const OrderVerdict v = order_bound_check(xi, 0, JetMode::Even);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  const auto& w = *v.witness;
  CHECK(w.lhs != w.rhs);
  // g and g' agree at the image point.
  const SuperPoint at = vector_field().point_at(w.x);
  const std::vector<Rational> y0{at.even[0].body()};
  CHECK(w.g.value_at(y0).body() == w.g2.value_at(y0).body());
  CHECK(certified_order(xi, JetMode::Even, 4) == 1);
}

TEST_CASE("theta coefficients of a random cubic morphism on R^{1|4}") {
  Rng rng(43);
  const SuperMorphism phi = random_morphism(rng, 1, 4, 1, 1, 3, 6);
  const auto coefs = eta_decompose(phi, 4, {});
  OrderCheckOptions o;
  o.probe_degree = 4;
  CHECK(order_bound_check(coefs.at(0b1111), 2, JetMode::Even, o).pass);
  for (const auto& cf : coefs) CHECK(order_bound_check(cf, subset_size(cf.index) / 2, JetMode::Even, o).pass);
}

TEST_CASE("eta coefficients bounded by |I| along the morphism") {
  Rng rng(47);
  for (int t = 0; t < 10; ++t) {
    const SuperMorphism phi = random_morphism(rng, 1, 3, 1, 1, 3);
    for (const auto& cf : eta_decompose(phi, 2, {}))
      REQUIRE(order_bound_check(cf, subset_size(cf.index), JetMode::Super).pass);
  }
}
