#pragma once

#include "supermap/grassmann.hpp"
#include "supermap/morphism.hpp"
#include "supermap/polynomial.hpp"
#include "supermap/superfun.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace test {

using namespace supermap;

inline Rational R(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

/// Element of Lambda_n from (1-based subset, coefficient) pairs.
inline Grassmann G(int n, std::vector<std::pair<std::vector<int>, Rational>> terms) {
  Grassmann g(n);
  for (auto& [s, c] : terms) g.add_term(subset_to_mask(s, n), c);
  return g;
}

inline Polynomial P(int p, std::vector<std::pair<std::vector<unsigned>, Rational>> terms) {
  Polynomial f(p);
  for (auto& [e, c] : terms) f.add_term(MultiIndex(e), c);
  return f;
}

inline Polynomial X(int p, int k) { return Polynomial::variable(p, k); }

/// Superfunction from (1-based theta subset, polynomial) pairs.
inline SuperFunction SF(int p, int q, std::vector<std::pair<std::vector<int>, Polynomial>> comps) {
  SuperFunction s(p, q);
  for (auto& [J, f] : comps) s.add_component(subset_to_mask(J, q), f);
  return s;
}

/// Product oracle: concatenate generator words, bubble-sort while counting
/// transpositions, and drop words with a repeated generator.
inline Grassmann word_product(const Grassmann& a, const Grassmann& b) {
  const int n = a.generators();
  Grassmann out(n);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<int> w = mask_to_subset(ma);
      const auto wb = mask_to_subset(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      int swaps = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
          if (w[j] > w[j + 1]) {
            std::swap(w[j], w[j + 1]);
            ++swaps;
          }
      if (std::adjacent_find(w.begin(), w.end()) != w.end()) continue;
      const Rational c = ca * cb;
      out.add_term(subset_to_mask(w, n), swaps % 2 ? Rational(-c) : c);
    }
  return out;
}

inline SuperPoint point(int n, std::vector<Grassmann> even, std::vector<Grassmann> odd) {
  return SuperPoint{n, std::move(even), std::move(odd)};
}

}  // namespace test
