#pragma once

#include "supermap/grassmann.hpp"
#include "supermap/polynomial.hpp"

#include <optional>
#include <span>
#include <vector>

namespace supermap {

namespace fault {
/// Mutation hook for the verification harness: sf_eval multiplies the odd
/// coordinates in descending order. Set only while no evaluation is running.
inline bool reversed_odd_products = false;
}  // namespace fault

/// Global superfunction sigma = sum_J sigma_J(x) theta^J on R^{p|q}.
///
/// Stored as an element of the Grassmann algebra on the q odd coordinates with
/// polynomial coefficients in the p even ones. theta^J is the ascending product
/// theta^{j_1} ... theta^{j_k}; any reordering sign is folded into sigma_J.
class SuperFunction {
 public:
  SuperFunction() = default;
  SuperFunction(int p, int q);
  SuperFunction(int p, int q, BasicGrassmann<Polynomial> value);

  static SuperFunction constant(int p, int q, const Rational& c);
  static SuperFunction from_polynomial(int q, const Polynomial& f);
  /// x^{i+1} (i is 0-based).
  static SuperFunction even_coordinate(int p, int q, int i);
  /// theta^{a+1} (a is 0-based).
  static SuperFunction odd_coordinate(int p, int q, int a);

  int p() const { return p_; }
  int q() const { return q_; }
  const BasicGrassmann<Polynomial>& value() const { return value_; }

  Polynomial component(Mask J) const;
  void add_component(Mask J, const Polynomial& f);
  bool is_zero() const { return value_.is_zero(); }

  bool is_even() const { return value_.is_even(); }
  bool is_odd() const { return value_.is_odd(); }
  std::optional<int> parity() const { return value_.parity(); }

  /// Highest total degree of any component polynomial.
  int degree() const;

  /// All components evaluated at a body point: an element of Lambda_q.
  Grassmann value_at(std::span<const Rational> x) const;

  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(const SuperFunction& a, const Rational& s);
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.value_ == b.value_;
  }

 private:
  void check_same(const SuperFunction& o) const;
  void normalize();

  int p_ = 0;
  int q_ = 0;
  BasicGrassmann<Polynomial> value_;
};

/// Supercommutative product with theta-sign bookkeeping.
SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b);

/// A Lambda_n-point of R^{p|q}: p even and q odd Grassmann coordinates.
template <class C>
struct BasicSuperPoint {
  int n = 0;
  std::vector<BasicGrassmann<C>> even;
  std::vector<BasicGrassmann<C>> odd;

  int p() const { return static_cast<int>(even.size()); }
  int q() const { return static_cast<int>(odd.size()); }

  /// Throws on generator-count or parity violations.
  void validate() const {
    for (const auto& e : even) {
      if (e.generators() != n) throw DimensionError("even coordinate in the wrong Grassmann algebra");
      if (!e.is_even()) throw ParityError("even coordinate is not purely even");
    }
    for (const auto& o : odd) {
      if (o.generators() != n) throw DimensionError("odd coordinate in the wrong Grassmann algebra");
      if (!o.is_odd()) throw ParityError("odd coordinate is not purely odd");
    }
  }

  std::vector<C> body() const {
    std::vector<C> b;
    for (const auto& e : even) b.push_back(e.body());
    return b;
  }

  friend bool operator==(const BasicSuperPoint&, const BasicSuperPoint&) = default;
};

using SuperPoint = BasicSuperPoint<Rational>;

/// Applies a Grassmann homomorphism coordinate-wise.
SuperPoint point_apply(const GrassmannHom& rho, const SuperPoint& nu);

/// nu-hat(sigma) = sum_{I,J} (1/I!) d^I sigma_J(nu~) nu_2^I nu_1^J. The I-sum
/// stops at the first total degree where every nu_2^I vanishes.
template <class C>
BasicGrassmann<C> sf_eval(const SuperFunction& sigma, const BasicSuperPoint<C>& nu) {
  if (sigma.p() != nu.p() || sigma.q() != nu.q()) throw DimensionError("sf_eval: superfunction and point dimensions differ");
  nu.validate();
  using G = BasicGrassmann<C>;
  const int n = nu.n;
  const int p = sigma.p();
  const auto embed = [](const Rational& c) { return CoeffTraits<C>::from_rational(c); };
  const C one = CoeffTraits<C>::from_int(1);

  const std::vector<C> body = nu.body();
  std::vector<G> nil;
  for (const auto& e : nu.even) nil.push_back(soul(e));

  // nil[i]^e, grown on demand.
  std::vector<std::vector<G>> powers(p);
  auto nil_power = [&](int i, unsigned e) -> const G& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(G::scalar(n, one));
    while (pw.size() <= e) pw.push_back(pw.back() * nil[i]);
    return pw[e];
  };

  G result(n);
  for (const auto& [J, sj] : sigma.value().terms()) {
    G odd_part = G::scalar(n, one);
    for (Mask m = J; m != 0 && !odd_part.is_zero(); m &= m - 1) {
      const G& f = nu.odd[std::countr_zero(m)];
      odd_part = fault::reversed_odd_products ? f * odd_part : odd_part * f;
    }
    if (odd_part.is_zero()) continue;

    const int deg = sj.degree();
    for (int d = 0; d <= deg; ++d) {
      bool any = false;
      for_each_multi_index(p, static_cast<unsigned>(d), [&](const MultiIndex& I) {
        G mono = G::scalar(n, one);
        for (int i = 0; i < p && !mono.is_zero(); ++i)
          if (I[i] != 0) mono = mono * nil_power(i, I[i]);
        if (mono.is_zero()) return;
        any = true;
        const Polynomial dI = poly_derive(sj, I);
        if (dI.is_zero()) return;
        C coeff = dI.evaluate<C>(body, embed, one) * CoeffTraits<C>::from_rational(1 / I.factorial());
        result += (mono * odd_part) * coeff;
      });
      if (!any) break;
    }
  }
  return result;
}

struct SuperMorphism;

/// Phi*(sigma) for sigma on the target of Phi. Throws DegreeBoundError when an
/// expanded component could exceed degree_bound.
SuperFunction sf_substitute(const SuperFunction& sigma, const SuperMorphism& phi,
                            int degree_bound = kDefaultDegreeBound);

}  // namespace supermap
