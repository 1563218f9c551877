#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/jetcalc.hpp"
#include "supermap/random.hpp"
#include "test_support.hpp"

using namespace test;

namespace {

Polynomial one(int p) { return Polynomial::constant(p, R(1)); }

/// f(x0 + h) - f(x0), expanded by substitution.
Polynomial shifted_increment(const Polynomial& f, const std::vector<Rational>& x0) {
  std::vector<Polynomial> arg;
  for (std::size_t i = 0; i < x0.size(); ++i)
    arg.push_back(X(static_cast<int>(x0.size()), static_cast<int>(i)) +
                  Polynomial::constant(static_cast<int>(x0.size()), x0[i]));
  return poly_compose(f, arg, 64) - Polynomial::constant(static_cast<int>(x0.size()), poly_eval_at(f, x0));
}

/// D^m f(x0)[h, ..., h] = m! * (degree-m part of f(x0 + h)).
Polynomial directional_oracle(const Polynomial& f, const std::vector<Rational>& x0, unsigned m) {
  return shifted_increment(f, x0).homogeneous_part(m) * factorial(m);
}

}  // namespace

TEST_CASE("taylor_of examples") {
  const Polynomial x = X(1, 0);
  const JetMap t = taylor_of<Rational>({x * x}, {R(1)}, 2);
  CHECK(t.base[0] == 1);
  CHECK(t.even_part(0) == x * R(2) + x * x);

  for (int k = 1; k <= 3; ++k) CHECK(taylor_of<Rational>({x}, {R(-7, 3)}, k).even_part(0) == x);

  const Polynomial f = P(2, {{{1, 2}, R(1)}});
  const std::vector<Rational> x0{R(1), R(1)};
  CHECK(taylor_of<Rational>({f}, x0, 3).even_part(0) == shifted_increment(f, x0));
  CHECK(taylor_of<Rational>({f}, x0, 2).even_part(0) == shifted_increment(f, x0).truncated(2));
}

TEST_CASE("taylor_of matches substitution on random data") {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(1, 3), k = rng.uniform(0, 5);
    const Polynomial f = random_polynomial(rng, p, 4, 5);
    std::vector<Rational> x0;
    for (int i = 0; i < p; ++i) x0.push_back(rng.lattice_value());
    REQUIRE(taylor_of<Rational>({f}, x0, k).even_part(0) == shifted_increment(f, x0).truncated(k));
  }
}

TEST_CASE("trunc_mul") {
  const Polynomial x = X(1, 0);
  const JetMap a = taylor_of<Rational>({x + one(1)}, {R(0)}, 1);
  const JetMap sq = trunc_mul(a, a, 1);
  CHECK(sq.base[0] == 1);
  CHECK(sq.even_part(0) == x * R(2));

  const JetMap b = taylor_of<Rational>({x * x * x + x}, {R(2)}, 3);
  const JetMap u = taylor_of<Rational>({one(1)}, {R(2)}, 3);
  CHECK(trunc_mul(b, u, 3) == b);
}

TEST_CASE("trunc_compose examples") {
  const Polynomial x = X(1, 0);
  const JetMap outer = taylor_of<Rational>({x * x}, {R(1)}, 2);
  const JetMap inner = taylor_of<Rational>({x + one(1)}, {R(0)}, 2);
  const JetMap c = trunc_compose(outer, inner, 2);
  CHECK(c.base[0] == 1);
  CHECK(c.even_part(0) == x * R(2) + x * x);
  CHECK(c.even_part(0) == shifted_increment(poly_compose(x * x, std::vector<Polynomial>{x + one(1)}), {R(0)}));

  const JetMap id = taylor_of<Rational>({X(2, 0), X(2, 1)}, {R(1), R(2)}, 3);
  const JetMap g = taylor_of<Rational>({P(2, {{{2, 1}, R(1)}, {{0, 1}, R(-3)}})}, {R(1), R(2)}, 3);
  CHECK(trunc_compose(g, id, 3) == g);

  const JetMap lin_outer = taylor_of<Rational>({x * x * x}, {R(2)}, 1);
  const JetMap lin_inner = taylor_of<Rational>({x * x + one(1)}, {R(1)}, 1);
  CHECK(trunc_compose(lin_outer, lin_inner, 1).even_part(0) == x * R(12 * 2));
}

TEST_CASE("trunc_compose requires matching base points") {
  const Polynomial x = X(1, 0);
  CHECK_THROWS_AS(trunc_compose(taylor_of<Rational>({x}, {R(0)}, 1), taylor_of<Rational>({x + one(1)}, {R(0)}, 1), 1),
                  PreconditionError);
}

TEST_CASE("Faa di Bruno, one variable, m = 2") {
  const Polynomial x = X(1, 0);
  const Polynomial b = x * x * x, phi = x * x + x;
  const Rational x0 = R(2);
  // (b o phi)'' = b''(phi) phi'^2 + b'(phi) phi''.
  const Rational y0 = x0 * x0 + x0, d1 = 2 * x0 + 1, d2 = 2;
  const Rational expected = 6 * y0 * d1 * d1 + 3 * y0 * y0 * d2;
  CHECK(faa_di_bruno({b}, {phi}, {x0}, 2)[0] == x * x * expected);
}

TEST_CASE("Faa di Bruno against the composition oracle") {
  Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    const int p = rng.uniform(1, 2), mid = rng.uniform(1, 2);
    const unsigned m = static_cast<unsigned>(rng.uniform(1, 6));
    std::vector<Polynomial> phi, b;
    for (int j = 0; j < mid; ++j) phi.push_back(random_polynomial(rng, p, 3, 3));
    b.push_back(random_polynomial(rng, mid, 3, 3));
    std::vector<Rational> x0;
    for (int i = 0; i < p; ++i) x0.push_back(rng.lattice_value());
    const Polynomial bphi = poly_compose(b[0], phi, 64);
    REQUIRE(faa_di_bruno(b, phi, x0, m)[0] == directional_oracle(bphi, x0, m));
  }
}

TEST_CASE("partitions by multiplicity") {
  CHECK(partitions_by_multiplicity(1).size() == 1);
  CHECK(partitions_by_multiplicity(4).size() == 5);
  CHECK(partitions_by_multiplicity(6).size() == 11);
  for (const auto& a : partitions_by_multiplicity(5)) {
    unsigned s = 0;
    for (unsigned j = 0; j < a.size(); ++j) s += (j + 1) * a[j];
    CHECK(s == 5);
  }
}

TEST_CASE("exp_pair") {
  const JetMap lin = taylor_of<Rational>({X(1, 0)}, {R(0)}, 1);
  const Grassmann lam = G(2, {{{1, 2}, R(3)}});
  const std::vector<Grassmann> even{lam}, none;
  CHECK(exp_pair<Rational>(lin, even, none)[0] == lam);

  JetMap vv;
  vv.order = 0;
  vv.odd_dim = 2;
  vv.base = {R(0)};
  JetMap::Increment inc(2);
  inc.add_term(0b11, Polynomial::constant(0, R(1)));
  vv.increments = {inc};
  const std::vector<Grassmann> odd{Grassmann::generator(2, 1), Grassmann::generator(2, 2)};
  CHECK(exp_pair<Rational>(vv, none, odd)[0] == G(2, {{{1, 2}, R(1)}}));
}

TEST_CASE("exp_pair over an empty argument list") {
  JetMap c;
  c.base = {R(5)};
  c.increments = {JetMap::Increment(0)};
  const std::vector<Grassmann> none;
  CHECK(exp_pair<Rational>(c, none, none, 3)[0] == Grassmann::scalar(3, R(5)));
}

TEST_CASE("exp_pair parity checks") {
  const JetMap lin = taylor_of<Rational>({X(1, 0)}, {R(0)}, 1);
  const std::vector<Grassmann> odd{Grassmann::generator(2, 1)}, none;
  CHECK_THROWS_AS(exp_pair<Rational>(lin, odd, none), ParityError);
}
