#include "supermap/polynomial.hpp"

#include <string>

namespace supermap {

namespace {

void enumerate(std::size_t p, std::size_t pos, unsigned remaining, MultiIndex& cur,
               const std::function<void(const MultiIndex&)>& fn) {
  if (pos + 1 == p) {
    cur[pos] = remaining;
    fn(cur);
    cur[pos] = 0;
    return;
  }
  for (unsigned v = remaining + 1; v-- > 0;) {
    cur[pos] = v;
    enumerate(p, pos + 1, remaining - v, cur, fn);
  }
  cur[pos] = 0;
}

}  // namespace

void for_each_multi_index(std::size_t p, unsigned d, const std::function<void(const MultiIndex&)>& fn) {
  if (p == 0) {
    if (d == 0) fn(MultiIndex());
    return;
  }
  MultiIndex cur(p);
  enumerate(p, 0, d, cur, fn);
}

std::vector<MultiIndex> multi_indices(std::size_t p, unsigned lo, unsigned hi) {
  std::vector<MultiIndex> out;
  for (unsigned d = lo; d <= hi; ++d) for_each_multi_index(p, d, [&](const MultiIndex& I) { out.push_back(I); });
  return out;
}

int composed_degree(const Polynomial& f, std::span<const Polynomial> gs) {
  int best = f.is_zero() ? -1 : 0;
  for (const auto& [I, c] : f.terms()) {
    int d = 0;
    for (std::size_t i = 0; i < I.size(); ++i) d += static_cast<int>(I[i]) * std::max(gs[i].degree(), 0);
    best = std::max(best, d);
  }
  return best;
}

Polynomial poly_compose(const Polynomial& f, std::span<const Polynomial> gs, int degree_bound) {
  if (static_cast<int>(gs.size()) != f.variables()) throw DimensionError("poly_compose: arity mismatch");
  int p = -1;
  for (const auto& g : gs) {
    if (p < 0) p = g.variables();
    if (g.variables() != p) throw DimensionError("poly_compose: inner polynomials disagree on variable count");
  }
  if (p < 0) p = 0;
  const int d = composed_degree(f, gs);
  if (d > degree_bound)
    throw DegreeBoundError("composition degree " + std::to_string(d) + " exceeds bound " +
                           std::to_string(degree_bound));
  return f.evaluate<Polynomial>(
      gs, [p](const Rational& c) { return Polynomial::constant(p, c); }, Polynomial::constant(p, 1));
}

Rational poly_eval_at(const Polynomial& f, std::span<const Rational> x) { return f.evaluate(x); }

Polynomial poly_shift(const Polynomial& f, std::span<const Rational> shift) {
  const int p = f.variables();
  if (static_cast<int>(shift.size()) != p) throw DimensionError("poly_shift: shift length mismatch");
  std::vector<Polynomial> gs;
  for (int i = 0; i < p; ++i) gs.push_back(Polynomial::variable(p, i) + Polynomial::constant(p, shift[i]));
  return poly_compose(f, gs, std::max(f.degree(), 0));
}

}  // namespace supermap
