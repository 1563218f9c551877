#pragma once

#include "supermap/grassmann.hpp"
#include "supermap/polynomial.hpp"
#include "supermap/superfun.hpp"

#include <span>
#include <vector>

namespace supermap {

/// Truncated Taylor datum of a vector-valued map at a point.
///
/// Component j is base[j] + increments[j], where increments[j] is a polynomial
/// in the even slots h (total degree 1..order, or 0..order when paired with odd
/// slots) times monomials w^J in the odd slots. Odd slots are stored as the
/// generators of a Grassmann algebra, so w^J is the ascending product.
template <class C>
struct TruncatedPolyMap {
  using Increment = BasicGrassmann<BasicPolynomial<C>>;

  int order = 0;
  int even_dim = 0;
  int odd_dim = 0;
  std::vector<C> source_point;  // empty when unknown
  std::vector<C> base;
  std::vector<Increment> increments;

  int target_dim() const { return static_cast<int>(base.size()); }

  /// Even-slot polynomial of component j (the w^0 part).
  BasicPolynomial<C> even_part(int j) const {
    BasicPolynomial<C> f = increments.at(j).body();
    return f.variables() == even_dim ? f : f.promoted(even_dim);
  }

  friend bool operator==(const TruncatedPolyMap&, const TruncatedPolyMap&) = default;
};

using JetMap = TruncatedPolyMap<Rational>;

namespace detail {

template <class C>
C eval_at(const Polynomial& f, std::span<const C> x) {
  return f.evaluate<C>(
      x, [](const Rational& c) { return CoeffTraits<C>::from_rational(c); }, CoeffTraits<C>::from_int(1));
}

/// sum_{lo<=|I|<=k} (1/I!) d^I f(x0) h^I as a polynomial in h.
template <class C>
BasicPolynomial<C> taylor_polynomial(const Polynomial& f, std::span<const C> x0, int lo, int k) {
  const int p = f.variables();
  BasicPolynomial<C> out(p);
  const int top = std::min(k, std::max(f.degree(), 0));
  for (int d = lo; d <= top; ++d) {
    for_each_multi_index(p, static_cast<unsigned>(d), [&](const MultiIndex& I) {
      const Polynomial dI = poly_derive(f, I);
      if (dI.is_zero()) return;
      C c = eval_at<C>(dI, x0) * CoeffTraits<C>::from_rational(1 / I.factorial());
      if (!CoeffTraits<C>::is_zero(c)) out.add_term(I, c);
    });
  }
  return out;
}

template <class C>
typename TruncatedPolyMap<C>::Increment truncate_increment(const typename TruncatedPolyMap<C>::Increment& a,
                                                            int k) {
  typename TruncatedPolyMap<C>::Increment out(a.generators());
  for (const auto& [J, f] : a.terms()) out.add_term(J, f.truncated(static_cast<unsigned>(k)));
  return out;
}

}  // namespace detail

/// Exact Taylor data of a polynomial map at x0 up to order k.
template <class C>
TruncatedPolyMap<C> taylor_of(const std::vector<Polynomial>& phi, const std::vector<C>& x0, int k) {
  if (k < 0) throw PreconditionError("truncation order must be non-negative");
  TruncatedPolyMap<C> out;
  out.order = k;
  out.even_dim = static_cast<int>(x0.size());
  out.source_point = x0;
  for (const auto& f : phi) {
    if (f.variables() != out.even_dim) throw DimensionError("taylor_of: polynomial and point dimensions differ");
    out.base.push_back(detail::eval_at<C>(f, x0));
    typename TruncatedPolyMap<C>::Increment inc(0);
    inc.add_term(0, detail::taylor_polynomial<C>(f, x0, 1, k));
    out.increments.push_back(std::move(inc));
  }
  return out;
}

/// Taylor data of superfunctions sum_J sigma_J theta^J at x0: even slots carry
/// the Taylor expansion of each sigma_J, odd slots carry theta^J.
template <class C>
TruncatedPolyMap<C> taylor_table(const std::vector<SuperFunction>& sigma, const std::vector<C>& x0, int k) {
  if (k < 0) throw PreconditionError("truncation order must be non-negative");
  TruncatedPolyMap<C> out;
  out.order = k;
  out.even_dim = static_cast<int>(x0.size());
  out.odd_dim = sigma.empty() ? 0 : sigma.front().q();
  out.source_point = x0;
  for (const auto& s : sigma) {
    if (s.p() != out.even_dim || s.q() != out.odd_dim) throw DimensionError("taylor_table: dimension mismatch");
    out.base.push_back(detail::eval_at<C>(s.component(0), x0));
    typename TruncatedPolyMap<C>::Increment inc(out.odd_dim);
    for (const auto& [J, f] : s.value().terms())
      inc.add_term(J, detail::taylor_polynomial<C>(f, x0, J == 0 ? 1 : 0, k));
    out.increments.push_back(std::move(inc));
  }
  return out;
}

/// Product of scalar-valued truncated data, terms above order k dropped.
template <class C>
TruncatedPolyMap<C> trunc_mul(const TruncatedPolyMap<C>& a, const TruncatedPolyMap<C>& b, int k) {
  if (a.target_dim() != 1 || b.target_dim() != 1) throw DimensionError("trunc_mul: scalar-valued data required");
  if (a.even_dim != b.even_dim || a.odd_dim != b.odd_dim) throw DimensionError("trunc_mul: source dimensions differ");
  if (!a.source_point.empty() && !b.source_point.empty() && a.source_point != b.source_point)
    throw PreconditionError("trunc_mul: data based at different points");
  using Inc = typename TruncatedPolyMap<C>::Increment;
  using P = BasicPolynomial<C>;
  TruncatedPolyMap<C> out;
  out.order = k;
  out.even_dim = a.even_dim;
  out.odd_dim = a.odd_dim;
  out.source_point = a.source_point.empty() ? b.source_point : a.source_point;
  out.base = {a.base[0] * b.base[0]};
  const Inc& ia = a.increments[0];
  const Inc& ib = b.increments[0];
  Inc acc = ia * P::constant(a.even_dim, b.base[0]);
  acc += ib * P::constant(a.even_dim, a.base[0]);
  acc += ia * ib;
  out.increments = {detail::truncate_increment<C>(acc, k)};
  return out;
}

/// Truncated substitution: outer based at inner's base value.
template <class C>
TruncatedPolyMap<C> trunc_compose(const TruncatedPolyMap<C>& outer, const TruncatedPolyMap<C>& inner, int k) {
  if (outer.odd_dim != 0 || inner.odd_dim != 0) throw PreconditionError("trunc_compose: even-slot data required");
  if (outer.even_dim != inner.target_dim()) throw DimensionError("trunc_compose: outer source differs from inner target");
  if (!outer.source_point.empty() && outer.source_point != inner.base)
    throw PreconditionError("trunc_compose: outer is not based at the inner base value");
  using P = BasicPolynomial<C>;
  const auto K = static_cast<unsigned>(k);
  std::vector<P> h;
  for (int i = 0; i < inner.target_dim(); ++i) h.push_back(inner.even_part(i).truncated(K));

  TruncatedPolyMap<C> out;
  out.order = k;
  out.even_dim = inner.even_dim;
  out.source_point = inner.source_point;
  out.base = outer.base;
  const int m = inner.even_dim;
  for (int j = 0; j < outer.target_dim(); ++j) {
    std::vector<std::vector<P>> powers(h.size(), std::vector<P>{P::constant(m, CoeffTraits<C>::from_int(1))});
    P acc(m);
    const P oj = outer.even_part(j);
    for (const auto& [I, c] : oj.terms()) {
      P term = P::constant(m, c);
      for (std::size_t i = 0; i < I.size() && !term.is_zero(); ++i) {
        auto& pw = powers[i];
        while (pw.size() <= I[i]) pw.push_back(pw.back().mul_truncated(h[i], K));
        if (I[i] != 0) term = term.mul_truncated(pw[I[i]], K);
      }
      acc += term;
    }
    typename TruncatedPolyMap<C>::Increment inc(0);
    inc.add_term(0, acc);
    out.increments.push_back(std::move(inc));
  }
  return out;
}

/// <exp(mu), P>: evaluates the truncated data on Grassmann arguments. even_args
/// must be purely even (they replace h), odd_args purely odd (they replace w).
/// generators fixes the algebra when both lists are empty; -1 infers it.
template <class C>
std::vector<BasicGrassmann<C>> exp_pair(const TruncatedPolyMap<C>& P, std::span<const BasicGrassmann<C>> even_args,
                                        std::span<const BasicGrassmann<C>> odd_args, int generators = -1) {
  if (static_cast<int>(even_args.size()) != P.even_dim || static_cast<int>(odd_args.size()) != P.odd_dim)
    throw DimensionError("exp_pair: slot count mismatch");
  int n = generators;
  for (const auto& a : even_args) {
    if (!a.is_even()) throw ParityError("exp_pair: even slot given a non-even element");
    if (n < 0) n = a.generators();
    if (a.generators() != n) throw DimensionError("exp_pair: arguments in different algebras");
  }
  for (const auto& a : odd_args) {
    if (!a.is_odd()) throw ParityError("exp_pair: odd slot given a non-odd element");
    if (n < 0) n = a.generators();
    if (a.generators() != n) throw DimensionError("exp_pair: arguments in different algebras");
  }
  if (n < 0) n = 0;
  using G = BasicGrassmann<C>;
  const C one = CoeffTraits<C>::from_int(1);
  const auto embed = [n](const C& c) { return G::scalar(n, c); };

  std::vector<G> out;
  for (int j = 0; j < P.target_dim(); ++j) {
    G acc = G::scalar(n, P.base[j]);
    for (const auto& [J, f] : P.increments[j].terms()) {
      G wj = G::scalar(n, one);
      for (Mask m = J; m != 0 && !wj.is_zero(); m &= m - 1) wj = wj * odd_args[std::countr_zero(m)];
      if (wj.is_zero()) continue;
      BasicPolynomial<C> g = f.variables() == P.even_dim ? f : f.promoted(P.even_dim);
      acc += g.template evaluate<G>(even_args, embed, G::scalar(n, one)) * wj;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// M_m = { alpha : sum_j j * alpha_j = m }, each alpha of length m (alpha_1..alpha_m).
const std::vector<std::vector<unsigned>>& partitions_by_multiplicity(unsigned m);

/// D^m(b o phi)(x0)[h, ..., h] assembled over M_m, as homogeneous degree-m
/// polynomials in h (one per component of b).
std::vector<Polynomial> faa_di_bruno(const std::vector<Polynomial>& b, const std::vector<Polynomial>& phi,
                                     const std::vector<Rational>& x0, unsigned m);

}  // namespace supermap
