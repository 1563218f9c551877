#pragma once

#include "supermap/errors.hpp"
#include "supermap/grassmann.hpp"
#include "supermap/rational.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <vector>

namespace supermap {

inline constexpr int kDefaultDegreeBound = 16;

/// Exponent vector (i_1, ..., i_p).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t p) : e_(p, 0) {}
  MultiIndex(std::initializer_list<unsigned> e) : e_(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t p, std::size_t k) {
    MultiIndex m(p);
    m.e_.at(k) = 1;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned& operator[](std::size_t i) { return e_[i]; }
  const std::vector<unsigned>& entries() const { return e_; }

  unsigned total() const { return std::accumulate(e_.begin(), e_.end(), 0u); }

  Rational factorial() const {
    Rational r = 1;
    for (unsigned v : e_) r *= supermap::factorial(v);
    return r;
  }

  bool divides(const MultiIndex& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
    if (a.size() != b.size()) throw DimensionError("multi-index lengths differ");
    for (std::size_t i = 0; i < a.size(); ++i) a.e_[i] += b.e_[i];
    return a;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> e_;
};

/// Calls fn(I) for every multi-index of length p with |I| == d, in lexicographic order.
void for_each_multi_index(std::size_t p, unsigned d, const std::function<void(const MultiIndex&)>& fn);

/// All multi-indices of length p with lo <= |I| <= hi, grouped by |I|.
std::vector<MultiIndex> multi_indices(std::size_t p, unsigned lo, unsigned hi);

/// Sparse polynomial in p commuting variables with coefficients in C.
///
/// A polynomial with p == 0 is a constant and combines with polynomials of any
/// variable count; this is what lets polynomials serve as a coefficient ring.
template <class C>
class BasicPolynomial {
 public:
  using Coeff = C;
  using Terms = std::map<MultiIndex, C>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(int p) : p_(p) {
    if (p < 0) throw DimensionError("negative variable count");
  }

  static BasicPolynomial constant(int p, const C& c) {
    BasicPolynomial f(p);
    f.add_term(MultiIndex(p), c);
    return f;
  }

  /// The coordinate x_{k+1} (k is 0-based).
  static BasicPolynomial variable(int p, int k) {
    BasicPolynomial f(p);
    f.add_term(MultiIndex::unit(p, k), CoeffTraits<C>::from_int(1));
    return f;
  }

  static BasicPolynomial monomial(const MultiIndex& I, const C& c) {
    BasicPolynomial f(static_cast<int>(I.size()));
    f.add_term(I, c);
    return f;
  }

  int variables() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const MultiIndex& I, const C& c) {
    if (static_cast<int>(I.size()) != p_) throw DimensionError("exponent length differs from variable count");
    if (CoeffTraits<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(I, c);
    if (!inserted) {
      it->second = it->second + c;
      if (CoeffTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const MultiIndex& I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? CoeffTraits<C>::from_int(0) : it->second;
  }

  C constant_term() const { return coefficient(MultiIndex(p_)); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
  }

  int degree() const {
    int d = -1;
    for (const auto& [I, c] : terms_) d = std::max(d, static_cast<int>(I.total()));
    return d;
  }

  /// Same constant in p variables; only valid for constants.
  BasicPolynomial promoted(int p) const {
    if (p == p_) return *this;
    if (p_ != 0) throw DimensionError("polynomials in different variable counts");
    return constant(p, constant_term());
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    unify(o);
    if (o.p_ != p_) return *this += o.promoted(p_);
    for (const auto& [I, c] : o.terms_) add_term(I, c);
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    unify(o);
    if (o.p_ != p_) return *this -= o.promoted(p_);
    for (const auto& [I, c] : o.terms_) add_term(I, -c);
    return *this;
  }

  BasicPolynomial& operator*=(const C& s) {
    if (CoeffTraits<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    Terms out;
    for (auto& [I, c] : terms_) {
      C v = c * s;
      if (!CoeffTraits<C>::is_zero(v)) out.emplace(I, std::move(v));
    }
    terms_ = std::move(out);
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const C& s) { return a *= s; }
  friend BasicPolynomial operator*(const C& s, BasicPolynomial a) { return a *= s; }

  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& [I, c] : a.terms_) c = -c;
    return a;
  }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.p_ != b.p_) {
      if (a.p_ == 0) return a.promoted(b.p_) * b;
      if (b.p_ == 0) return a * b.promoted(a.p_);
      throw DimensionError("polynomials in different variable counts");
    }
    BasicPolynomial out(a.p_);
    for (const auto& [Ia, ca] : a.terms_)
      for (const auto& [Ib, cb] : b.terms_) out.add_term(Ia + Ib, ca * cb);
    return out;
  }

  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.p_ != b.p_) {
      if (a.is_constant() && b.is_constant()) return a.constant_term() == b.constant_term();
      return false;
    }
    return a.terms_ == b.terms_;
  }

  /// Drops every term of total degree above k.
  BasicPolynomial truncated(unsigned k) const {
    BasicPolynomial out(p_);
    for (const auto& [I, c] : terms_)
      if (I.total() <= k) out.terms_.emplace(I, c);
    return out;
  }

  /// Terms of total degree exactly d.
  BasicPolynomial homogeneous_part(unsigned d) const {
    BasicPolynomial out(p_);
    for (const auto& [I, c] : terms_)
      if (I.total() == d) out.terms_.emplace(I, c);
    return out;
  }

  /// Truncated product: terms of total degree above k are never formed.
  BasicPolynomial mul_truncated(const BasicPolynomial& b, unsigned k) const {
    if (p_ != b.p_) return (*this * b).truncated(k);
    BasicPolynomial out(p_);
    for (const auto& [Ia, ca] : terms_) {
      const unsigned da = Ia.total();
      if (da > k) continue;
      for (const auto& [Ib, cb] : b.terms_)
        if (da + Ib.total() <= k) out.add_term(Ia + Ib, ca * cb);
    }
    return out;
  }

  /// Evaluates with every variable replaced by args[i], in any commutative
  /// ring D; embed maps a coefficient into D. Powers are cached per variable.
  template <class D, class Embed>
  D evaluate(std::span<const D> args, Embed embed, const D& one) const {
    if (static_cast<int>(args.size()) != p_) throw DimensionError("argument count differs from variable count");
    std::vector<std::vector<D>> powers(p_);
    for (const auto& [I, c] : terms_)
      for (int i = 0; i < p_; ++i) {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(one);
        while (pw.size() <= I[i]) pw.push_back(pw.back() * args[i]);
      }
    D acc = embed(CoeffTraits<C>::from_int(0));
    for (const auto& [I, c] : terms_) {
      D term = embed(c);
      for (int i = 0; i < p_; ++i)
        if (I[i] != 0) term = term * powers[i][I[i]];
      acc = acc + term;
    }
    return acc;
  }

  C evaluate(std::span<const C> args) const {
    return evaluate<C>(args, [](const C& c) { return c; }, CoeffTraits<C>::from_int(1));
  }

  template <class F>
  auto map_coefficients(F f) const -> BasicPolynomial<decltype(f(std::declval<const C&>()))> {
    BasicPolynomial<decltype(f(std::declval<const C&>()))> out(p_);
    for (const auto& [I, c] : terms_) out.add_term(I, f(c));
    return out;
  }

 private:
  void unify(const BasicPolynomial& o) {
    if (o.p_ == p_) return;
    if (p_ == 0 && is_constant()) {
      *this = promoted(o.p_);
      return;
    }
    if (o.p_ == 0) return;
    throw DimensionError("polynomials in different variable counts");
  }

  int p_ = 0;
  Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;

template <class C>
struct CoeffTraits<BasicPolynomial<C>> {
  static bool is_zero(const BasicPolynomial<C>& c) { return c.is_zero(); }
  static BasicPolynomial<C> from_rational(const Rational& r) {
    return BasicPolynomial<C>::constant(0, CoeffTraits<C>::from_rational(r));
  }
  static BasicPolynomial<C> from_int(std::int64_t v) {
    return BasicPolynomial<C>::constant(0, CoeffTraits<C>::from_int(v));
  }
};

/// Exact iterated partial derivative d^{|I|} f / dx^I.
template <class C>
BasicPolynomial<C> poly_derive(const BasicPolynomial<C>& f, const MultiIndex& I) {
  if (static_cast<int>(I.size()) != f.variables()) throw DimensionError("multi-index length differs from variable count");
  BasicPolynomial<C> out(f.variables());
  for (const auto& [E, c] : f.terms()) {
    if (!I.divides(E)) continue;
    MultiIndex R = E;
    Rational falling = 1;
    for (std::size_t i = 0; i < I.size(); ++i) {
      for (unsigned t = 0; t < I[i]; ++t) falling *= Rational(E[i] - t);
      R[i] = E[i] - I[i];
    }
    out.add_term(R, c * CoeffTraits<C>::from_rational(falling));
  }
  return out;
}

/// Upper bound on the total degree of f(g_1, ..., g_p).
int composed_degree(const Polynomial& f, std::span<const Polynomial> gs);

/// Exact substitution f(g_1, ..., g_p). Throws DegreeBoundError when the
/// a-priori result degree exceeds degree_bound.
Polynomial poly_compose(const Polynomial& f, std::span<const Polynomial> gs,
                        int degree_bound = kDefaultDegreeBound);

/// Rational point evaluation.
Rational poly_eval_at(const Polynomial& f, std::span<const Rational> x);

/// Polynomial p(x + shift) re-expanded around the origin (Taylor shift).
Polynomial poly_shift(const Polynomial& f, std::span<const Rational> shift);

/// Substitutes purely even Grassmann elements of a common Lambda_n and
/// expands. Odd (or mixed) arguments raise ParityError. generators names the
/// algebra when f has no variables (-1: take it from args, else 0).
template <class C>
BasicGrassmann<C> poly_eval(const Polynomial& f, std::span<const BasicGrassmann<C>> args, int generators = -1) {
  if (static_cast<int>(args.size()) != f.variables()) throw DimensionError("argument count differs from variable count");
  const int n = !args.empty() ? args.front().generators() : std::max(generators, 0);
  for (const auto& a : args) {
    if (a.generators() != n) throw DimensionError("arguments live in different Grassmann algebras");
    if (!a.is_even()) throw ParityError("polynomial arguments must be purely even");
  }
  using G = BasicGrassmann<C>;
  return f.evaluate<G>(
      args, [n](const Rational& c) { return G::scalar(n, CoeffTraits<C>::from_rational(c)); },
      G::scalar(n, CoeffTraits<C>::from_int(1)));
}

}  // namespace supermap
