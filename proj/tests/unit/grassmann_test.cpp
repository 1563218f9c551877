#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/random.hpp"
#include "test_support.hpp"

using namespace test;

TEST_CASE("products of generators") {
  const Grassmann e1 = Grassmann::generator(2, 1), e2 = Grassmann::generator(2, 2);
  CHECK(e1 * e2 == G(2, {{{1, 2}, R(1)}}));
  CHECK(e2 * e1 == G(2, {{{1, 2}, R(-1)}}));
  const Grassmann a = G(2, {{{}, R(1)}, {{1, 2}, R(1)}});
  CHECK(a * a == G(2, {{{}, R(1)}, {{1, 2}, R(2)}}));
  CHECK((e1 * e1).is_zero());
}

TEST_CASE("products agree with the word-reduction oracle") {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const int n = rng.uniform(0, 6);
    const Grassmann a = random_grassmann(rng, n, rng.uniform(0, 1), 4, true);
    const Grassmann b = random_grassmann(rng, n, rng.uniform(0, 1), 4, rng.chance(1, 2));
    REQUIRE(a * b == word_product(a, b));
  }
}

TEST_CASE("mismatched algebras are rejected") {
  CHECK_THROWS_AS(Grassmann::generator(2, 1) * Grassmann::generator(3, 1), DimensionError);
  CHECK_THROWS_AS(Grassmann::generator(2, 3), DimensionError);
  CHECK_THROWS_AS(Grassmann(65), DimensionError);
}

TEST_CASE("degree split") {
  const auto s = gr_split(G(3, {{{}, R(3)}, {{1}, R(1)}, {{1, 2}, R(2)}}));
  CHECK(s.body == 3);
  CHECK(s.even_nil == G(3, {{{1, 2}, R(2)}}));
  CHECK(s.odd == G(3, {{{1}, R(1)}}));

  const auto z = gr_split(Grassmann(2));
  CHECK(z.body == 0);
  CHECK(z.even_nil.is_zero());
  CHECK(z.odd.is_zero());

  const auto t = gr_split(G(3, {{{1, 2, 3}, R(1)}}));
  CHECK(t.body == 0);
  CHECK(t.even_nil.is_zero());
  CHECK(t.odd == G(3, {{{1, 2, 3}, R(1)}}));
}

TEST_CASE("parity") {
  CHECK(Grassmann(3).is_even());
  CHECK(Grassmann(3).is_odd());
  CHECK(G(3, {{{1}, R(1)}, {{1, 2, 3}, R(2)}}).parity() == 1);
  CHECK(G(3, {{{}, R(1)}, {{1}, R(1)}}).parity() == std::nullopt);
}

TEST_CASE("hom validation") {
  CHECK(hom_validate(GrassmannHom{1, 2, {G(2, {{{1}, R(1)}, {{2}, R(1)}})}}));
  CHECK_FALSE(hom_validate(GrassmannHom{1, 2, {G(2, {{{1, 2}, R(1)}})}}));
  CHECK(hom_validate(GrassmannHom{1, 2, {Grassmann(2)}}));
  CHECK_FALSE(hom_validate(GrassmannHom{2, 2, {Grassmann::generator(2, 1)}}));
}

TEST_CASE("hom application") {
  const GrassmannHom dup{1, 2, {G(2, {{{1}, R(1)}, {{2}, R(1)}})}};
  CHECK(hom_apply(dup, G(1, {{{}, R(2)}, {{1}, R(5)}})) == G(2, {{{}, R(2)}, {{1}, R(5)}, {{2}, R(5)}}));

  const GrassmannHom swap{2, 2, {Grassmann::generator(2, 2), Grassmann::generator(2, 1)}};
  const Grassmann e12 = G(2, {{{1, 2}, R(1)}});
  CHECK(hom_apply(swap, e12) == word_product(swap.images[0], swap.images[1]));
  CHECK(hom_apply(swap, e12) == -e12);

  CHECK(hom_apply(GrassmannHom::body_projection(2), G(2, {{{}, R(7)}, {{1, 2}, R(1)}})) == Grassmann::scalar(0, R(7)));
}

TEST_CASE("random homs are multiplicative and compose") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform(0, 5), m = rng.uniform(0, 5), k = rng.uniform(0, 5);
    const GrassmannHom rho = random_hom(rng, n, m), sigma = random_hom(rng, m, k);
    REQUIRE(hom_validate(rho));
    const Grassmann a = random_grassmann(rng, n, 0, 4, true), b = random_grassmann(rng, n, 1, 4, false);
    REQUIRE(hom_apply(rho, a * b) == hom_apply(rho, a) * hom_apply(rho, b));
    REQUIRE(hom_apply(hom_compose(sigma, rho), a) == hom_apply(sigma, hom_apply(rho, a)));
  }
}

TEST_CASE("hom_extend fixes the extra generators") {
  const GrassmannHom dup{1, 2, {G(2, {{{1}, R(1)}, {{2}, R(1)}})}};
  const GrassmannHom ext = hom_extend(dup, 2);
  CHECK(ext.source == 3);
  CHECK(ext.target == 4);
  CHECK(hom_apply(ext, G(3, {{{1, 3}, R(1)}})) == G(4, {{{1, 4}, R(1)}, {{2, 4}, R(1)}}));
}

TEST_CASE("subset masks") {
  CHECK(mask_to_subset(0b1011) == std::vector<int>{1, 2, 4});
  CHECK(subset_to_mask({1, 2, 4}, 4) == 0b1011);
  CHECK_THROWS_AS(subset_to_mask({2, 1}, 4), PreconditionError);
  CHECK_THROWS_AS(subset_to_mask({5}, 4), DimensionError);
}
