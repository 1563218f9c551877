#pragma once

#include "supermap/grassmann.hpp"
#include "supermap/morphism.hpp"
#include "supermap/polynomial.hpp"
#include "supermap/superfun.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace supermap {

std::uint64_t splitmix64(std::uint64_t x);

/// Per-case seed derived from (seed, suite, case id); independent of scheduling.
std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::uint64_t case_id);

/// mt19937_64 with draws taken from raw outputs, so sequences do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
  }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }
  /// Nonzero rational a/b with |a| <= 4, b in {1, 2, 3}.
  Rational small_rational();
  /// Body value on a coarse lattice in [-1, 1].
  Rational lattice_value();
  double uniform_real(double lo, double hi);

 private:
  std::mt19937_64 eng_;
};

Polynomial random_polynomial(Rng& rng, int p, int max_degree, int max_terms);

/// parity: 0 even, 1 odd.
Grassmann random_grassmann(Rng& rng, int n, int parity, int max_terms, bool with_body);

SuperFunction random_superfunction(Rng& rng, int p, int q, int max_degree, int parity, int max_terms);

SuperMorphism random_morphism(Rng& rng, int p, int q, int p2, int q2, int max_degree, int max_terms = 3);

SuperPoint random_point(Rng& rng, int n, int p, int q, int max_terms = 3);

/// Random parity-preserving hom Lambda_n -> Lambda_m.
GrassmannHom random_hom(Rng& rng, int n, int m, int max_terms = 3);

}  // namespace supermap
