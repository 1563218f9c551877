#include "supermap/random.hpp"

namespace supermap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::uint64_t case_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : suite) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + case_id);
}

Rational Rng::small_rational() {
  int a = 0;
  while (a == 0) a = uniform(-4, 4);
  return make_rational(a, uniform(1, 3));
}

Rational Rng::lattice_value() { return make_rational(uniform(-4, 4), 4); }

double Rng::uniform_real(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Polynomial random_polynomial(Rng& rng, int p, int max_degree, int max_terms) {
  Polynomial f(p);
  const int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    MultiIndex I(p);
    const int d = rng.uniform(0, max_degree);
    for (int s = 0; s < d && p > 0; ++s) I[rng.uniform(0, p - 1)] += 1;
    f.add_term(I, rng.small_rational());
  }
  return f;
}

namespace {

Mask random_subset(Rng& rng, int n, int parity) {
  if (n == 0) return 0;
  for (int tries = 0; tries < 64; ++tries) {
    Mask m = rng.next() & full_mask(n);
    if (subset_size(m) % 2 == parity) return m;
  }
  return parity == 1 ? Mask{1} << rng.uniform(0, n - 1) : Mask{0};
}

}  // namespace

Grassmann random_grassmann(Rng& rng, int n, int parity, int max_terms, bool with_body) {
  Grassmann g(n);
  if (parity == 0 && with_body) g.add_term(0, rng.small_rational());
  if (parity == 1 && n == 0) return g;
  const int terms = rng.uniform(0, max_terms);
  for (int t = 0; t < terms; ++t) {
    const Mask m = random_subset(rng, n, parity);
    if (m == 0) continue;
    g.add_term(m, rng.small_rational());
  }
  return g;
}

SuperFunction random_superfunction(Rng& rng, int p, int q, int max_degree, int parity, int max_terms) {
  SuperFunction f(p, q);
  if (parity == 1 && q == 0) return f;
  const int comps = rng.uniform(1, max_terms);
  for (int t = 0; t < comps; ++t) {
    const Mask J = random_subset(rng, q, parity);
    f.add_component(J, random_polynomial(rng, p, max_degree, 2));
  }
  return f;
}

SuperMorphism random_morphism(Rng& rng, int p, int q, int p2, int q2, int max_degree, int max_terms) {
  SuperMorphism phi{p, q, p2, q2, {}, {}};
  for (int j = 0; j < p2; ++j) phi.even.push_back(random_superfunction(rng, p, q, max_degree, 0, max_terms));
  for (int b = 0; b < q2; ++b) phi.odd.push_back(random_superfunction(rng, p, q, max_degree, 1, max_terms));
  return phi;
}

SuperPoint random_point(Rng& rng, int n, int p, int q, int max_terms) {
  SuperPoint mu;
  mu.n = n;
  for (int i = 0; i < p; ++i) mu.even.push_back(random_grassmann(rng, n, 0, max_terms, true));
  for (int a = 0; a < q; ++a) mu.odd.push_back(random_grassmann(rng, n, 1, max_terms, false));
  return mu;
}

GrassmannHom random_hom(Rng& rng, int n, int m, int max_terms) {
  GrassmannHom rho{n, m, {}};
  for (int i = 0; i < n; ++i) rho.images.push_back(random_grassmann(rng, m, 1, max_terms, false));
  return rho;
}

}  // namespace supermap
