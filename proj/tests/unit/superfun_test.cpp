#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/random.hpp"
#include "test_support.hpp"

using namespace test;

namespace {

/// sum_J sigma_J(nu_even) nu_odd^J, expanded with the word-reduction product.
Grassmann expand_oracle(const SuperFunction& sigma, const SuperPoint& nu) {
  Grassmann out(nu.n);
  for (const auto& [J, f] : sigma.value().terms()) {
    Grassmann v(nu.n);
    for (const auto& [E, c] : f.terms()) {
      Grassmann mono = Grassmann::scalar(nu.n, c);
      for (std::size_t i = 0; i < E.size(); ++i)
        for (unsigned e = 0; e < E[i]; ++e) mono = word_product(mono, nu.even[i]);
      v += mono;
    }
    for (int a : mask_to_subset(J)) v = word_product(v, nu.odd[a - 1]);
    out += v;
  }
  return out;
}

}  // namespace

TEST_CASE("evaluation examples") {
  const Rational a = R(2), b1 = R(3), b2 = R(-1, 2), c = R(5);
  const SuperFunction xth = SF(1, 1, {{{1}, X(1, 0)}});
  const SuperPoint nu = point(2, {G(2, {{{}, a}, {{1, 2}, c}})}, {G(2, {{{1}, b1}, {{2}, b2}})});
  CHECK(sf_eval(xth, nu) == G(2, {{{1}, a * b1}, {{2}, a * b2}}));

  const SuperFunction th12 = SF(0, 2, {{{1, 2}, Polynomial::constant(0, R(1))}});
  const SuperPoint nu1 = point(2, {}, {G(2, {{{1}, b1}}), G(2, {{{2}, b2}})});
  CHECK(sf_eval(th12, nu1) == G(2, {{{1, 2}, b1 * b2}}));

  CHECK(sf_eval(SuperFunction::constant(1, 1, R(1)), nu) == Grassmann::scalar(2, R(1)));
  CHECK(sf_eval(SuperFunction::constant(0, 2, R(1)), nu1) == Grassmann::scalar(2, R(1)));
}

TEST_CASE("evaluation matches the expansion oracle") {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    const int p = rng.uniform(0, 3), q = rng.uniform(0, 3), n = rng.uniform(0, 6);
    const SuperFunction s = random_superfunction(rng, p, q, 4, rng.uniform(0, 1), 4);
    const SuperPoint nu = random_point(rng, n, p, q);
    REQUIRE(sf_eval(s, nu) == expand_oracle(s, nu));
  }
}

TEST_CASE("evaluation rejects bad points") {
  const SuperFunction xth = SF(1, 1, {{{1}, X(1, 0)}});
  CHECK_THROWS_AS(sf_eval(xth, point(2, {Grassmann::generator(2, 1)}, {Grassmann::generator(2, 2)})), ParityError);
  CHECK_THROWS_AS(sf_eval(xth, point(2, {}, {Grassmann::generator(2, 2)})), DimensionError);
}

TEST_CASE("multiplication") {
  const SuperFunction t1 = SuperFunction::odd_coordinate(1, 2, 0), t2 = SuperFunction::odd_coordinate(1, 2, 1);
  CHECK((t1 * t2).component(0b11) == Polynomial::constant(1, R(1)));
  CHECK((t2 * t1).component(0b11) == Polynomial::constant(1, R(-1)));
  CHECK((t1 * t1).is_zero());
  const SuperFunction x = SuperFunction::even_coordinate(1, 2, 0);
  CHECK(sf_mul(x * t1, t2) == SF(1, 2, {{{1, 2}, X(1, 0)}}));
}

TEST_CASE("substitution examples") {
  const Polynomial x = X(1, 0);
  SuperMorphism phi{1, 2, 1, 0, {SF(1, 2, {{{}, x}, {{1, 2}, Polynomial::constant(1, R(1))}})}, {}};
  const SuperFunction y2 = SF(1, 0, {{{}, X(1, 0) * X(1, 0)}});
  CHECK(sf_substitute(y2, phi) == SF(1, 2, {{{}, x * x}, {{1, 2}, x * R(2)}}));

  Rng rng(23);
  const SuperFunction s = random_superfunction(rng, 2, 2, 3, 0, 4);
  CHECK(sf_substitute(s, SuperMorphism::identity(2, 2)) == s);

  SuperMorphism odd{1, 1, 0, 1, {}, {SF(1, 1, {{{1}, x}})}};
  CHECK(sf_substitute(SuperFunction::odd_coordinate(0, 1, 0), odd) == SF(1, 1, {{{1}, x}}));
}

TEST_CASE("evaluation is natural in the Grassmann algebra") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(0, 2), q = rng.uniform(0, 3), n = rng.uniform(0, 5), m = rng.uniform(0, 5);
    const SuperFunction s = random_superfunction(rng, p, q, 3, rng.uniform(0, 1), 4);
    const SuperPoint nu = random_point(rng, n, p, q);
    const GrassmannHom rho = random_hom(rng, n, m);
    REQUIRE(hom_apply(rho, sf_eval(s, nu)) == sf_eval(s, point_apply(rho, nu)));
  }
}
