#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/random.hpp"
#include "test_support.hpp"

using namespace test;

namespace {

/// d/dx_k by the power rule, one variable at a time.
Polynomial derive_once(const Polynomial& f, std::size_t k) {
  Polynomial out(f.variables());
  for (const auto& [E, c] : f.terms()) {
    if (E[k] == 0) continue;
    MultiIndex F = E;
    F[k] -= 1;
    out.add_term(F, c * Rational(E[k]));
  }
  return out;
}

}  // namespace

TEST_CASE("poly_derive") {
  const Polynomial x = X(1, 0);
  CHECK(poly_derive(x * x, MultiIndex{2}) == Polynomial::constant(1, R(2)));
  CHECK(poly_derive(X(2, 0) * X(2, 1), MultiIndex{1, 1}) == Polynomial::constant(2, R(1)));
  const Polynomial f = P(2, {{{3, 1}, R(1)}});
  CHECK(poly_derive(f, MultiIndex{2, 0}) == derive_once(derive_once(f, 0), 0));
  CHECK(poly_derive(f, MultiIndex{2, 0}) == P(2, {{{1, 1}, R(6)}}));
  CHECK_THROWS_AS(poly_derive(f, MultiIndex{1}), DimensionError);
}

TEST_CASE("poly_derive matches repeated single derivatives") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(1, 3);
    const Polynomial f = random_polynomial(rng, p, 5, 5);
    MultiIndex I(p);
    Polynomial g = f;
    for (int i = 0; i < p; ++i) {
      I[i] = static_cast<unsigned>(rng.uniform(0, 3));
      for (unsigned e = 0; e < I[i]; ++e) g = derive_once(g, i);
    }
    REQUIRE(poly_derive(f, I) == g);
  }
}

TEST_CASE("poly_eval on nilpotent arguments") {
  const Polynomial x = X(1, 0);
  const Rational a = R(3, 2), c = R(-5);
  const Grassmann arg = G(2, {{{}, a}, {{1, 2}, c}});
  const std::vector<Grassmann> args{arg};
  CHECK(poly_eval<Rational>(x * x, args) == G(2, {{{}, a * a}, {{1, 2}, 2 * a * c}}));
  CHECK(poly_eval<Rational>(x * x, args) == arg * arg);
  CHECK(poly_eval<Rational>(Polynomial::constant(1, R(1)), args) == Grassmann::scalar(2, R(1)));

  const std::vector<Grassmann> two{G(4, {{{1, 2}, R(1)}}), G(4, {{{3, 4}, R(1)}})};
  CHECK(poly_eval<Rational>(X(2, 0) + X(2, 1), two) == G(4, {{{1, 2}, R(1)}, {{3, 4}, R(1)}}));

  const std::vector<Grassmann> odd{Grassmann::generator(2, 1)};
  CHECK_THROWS_AS(poly_eval<Rational>(x, odd), ParityError);
}

TEST_CASE("poly_eval with no variables uses the requested algebra") {
  const std::vector<Grassmann> none;
  CHECK(poly_eval<Rational>(Polynomial::constant(0, R(4)), none, 3) == Grassmann::scalar(3, R(4)));
}

TEST_CASE("poly_compose") {
  const Polynomial x = X(1, 0);
  const std::vector<Polynomial> g{x + Polynomial::constant(1, R(1))};
  CHECK(poly_compose(x * x, g) == x * x + x * R(2) + Polynomial::constant(1, R(1)));

  const Polynomial h = P(1, {{{3}, R(2)}, {{0}, R(-1)}});
  const std::vector<Polynomial> gh{h};
  CHECK(poly_compose(x, gh) == h);

  const std::vector<Polynomial> gs{x, x * x};
  CHECK(poly_compose(X(2, 0) * X(2, 1), gs) == x * x * x);
}

TEST_CASE("poly_compose degree guard") {
  const Polynomial x = X(1, 0);
  Polynomial f(1);
  f.add_term(MultiIndex{5}, R(1));
  const std::vector<Polynomial> g{x * x * x * x};
  CHECK_THROWS_AS(poly_compose(f, g), DegreeBoundError);
  CHECK(poly_compose(f, g, 20).degree() == 20);
}

TEST_CASE("poly_compose agrees with pointwise evaluation") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(1, 3), m = rng.uniform(1, 3);
    const Polynomial f = random_polynomial(rng, m, 3, 4);
    std::vector<Polynomial> gs;
    for (int i = 0; i < m; ++i) gs.push_back(random_polynomial(rng, p, 2, 3));
    const Polynomial fg = poly_compose(f, gs);
    std::vector<Rational> x;
    for (int i = 0; i < p; ++i) x.push_back(rng.lattice_value());
    std::vector<Rational> gx;
    for (const auto& g : gs) gx.push_back(poly_eval_at(g, x));
    REQUIRE(poly_eval_at(fg, x) == poly_eval_at(f, gx));
  }
}

TEST_CASE("constants promote") {
  const Polynomial c = Polynomial::constant(0, R(2));
  CHECK(c + X(2, 1) == Polynomial::constant(2, R(2)) + X(2, 1));
  CHECK(c.promoted(3) == Polynomial::constant(3, R(2)));
}

TEST_CASE("multi-index enumeration") {
  std::vector<MultiIndex> seen;
  for_each_multi_index(2, 2, [&](const MultiIndex& I) { seen.push_back(I); });
  CHECK(seen.size() == 3);
  CHECK(multi_indices(3, 0, 2).size() == 10);
}
