#pragma once

#include "supermap/errors.hpp"
#include "supermap/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supermap {

/// Generator subset of a Grassmann algebra. Bit i stands for generator i+1;
/// a subset always denotes the ascending product of its generators.
using Mask = std::uint64_t;

inline constexpr int kMaxGenerators = 62;

/// Sign of e_a * e_b = sign * e_{a|b} for disjoint ascending monomials: the
/// parity of the number of pairs (i in a, j in b) with i > j.
inline int reorder_sign(Mask a, Mask b) {
  int inversions = 0;
  while (b != 0) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

inline int subset_size(Mask m) { return std::popcount(m); }
inline Mask full_mask(int n) { return n == 0 ? Mask{0} : (~Mask{0} >> (64 - n)); }

/// 1-based generator indices of a subset, ascending.
std::vector<int> mask_to_subset(Mask m);
Mask subset_to_mask(const std::vector<int>& subset, int n);

/// Element of the real Grassmann algebra on n generators with coefficients in
/// C, stored sparsely by generator subset. No stored coefficient is zero.
template <class C>
class BasicGrassmann {
 public:
  using Coeff = C;
  using Terms = std::map<Mask, C>;

  BasicGrassmann() = default;
  explicit BasicGrassmann(int n) : n_(n) { check_generators(n); }

  static BasicGrassmann scalar(int n, const C& c) {
    BasicGrassmann g(n);
    g.add_term(0, c);
    return g;
  }

  /// The generator eta_i, i in 1..n.
  static BasicGrassmann generator(int n, int i) {
    if (i < 1 || i > n) throw DimensionError("generator index out of range");
    BasicGrassmann g(n);
    g.add_term(Mask{1} << (i - 1), CoeffTraits<C>::from_int(1));
    return g;
  }

  static BasicGrassmann monomial(int n, Mask m, const C& c) {
    BasicGrassmann g(n);
    g.add_term(m, c);
    return g;
  }

  int generators() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CoeffTraits<C>::from_int(0) : it->second;
  }

  C body() const { return coefficient(0); }

  /// Accumulates c into the coefficient of m; zero results are erased.
  void add_term(Mask m, const C& c) {
    if ((m & ~full_mask(n_)) != 0) throw DimensionError("subset uses generators beyond n");
    if (CoeffTraits<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (CoeffTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  bool is_even() const {
    for (const auto& [m, c] : terms_)
      if (subset_size(m) % 2 != 0) return false;
    return true;
  }

  bool is_odd() const {
    for (const auto& [m, c] : terms_)
      if (subset_size(m) % 2 == 0) return false;
    return true;
  }

  /// 0 or 1 when all terms share a parity; zero reports even.
  std::optional<int> parity() const {
    if (is_even()) return 0;
    if (is_odd()) return 1;
    return std::nullopt;
  }

  /// Highest subset cardinality among stored terms (-1 for zero).
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, subset_size(m));
    return d;
  }

  BasicGrassmann& operator+=(const BasicGrassmann& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  BasicGrassmann& operator-=(const BasicGrassmann& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  BasicGrassmann& operator*=(const C& s) {
    if (CoeffTraits<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    Terms out;
    for (auto& [m, c] : terms_) {
      C v = c * s;
      if (!CoeffTraits<C>::is_zero(v)) out.emplace(m, std::move(v));
    }
    terms_ = std::move(out);
    return *this;
  }

  friend BasicGrassmann operator+(BasicGrassmann a, const BasicGrassmann& b) { return a += b; }
  friend BasicGrassmann operator-(BasicGrassmann a, const BasicGrassmann& b) { return a -= b; }
  friend BasicGrassmann operator*(BasicGrassmann a, const C& s) { return a *= s; }
  friend BasicGrassmann operator*(const C& s, BasicGrassmann a) { return a *= s; }

  friend BasicGrassmann operator-(BasicGrassmann a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }

  /// Supercommutative product; basis monomials multiply by sorted merge.
  friend BasicGrassmann operator*(const BasicGrassmann& a, const BasicGrassmann& b) {
    a.check_same(b);
    BasicGrassmann out(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if ((ma & mb) != 0) continue;
        C prod = ca * cb;
        if (reorder_sign(ma, mb) < 0) prod = -prod;
        out.add_term(ma | mb, prod);
      }
    }
    return out;
  }

  BasicGrassmann& operator*=(const BasicGrassmann& o) { return *this = *this * o; }

  friend bool operator==(const BasicGrassmann& a, const BasicGrassmann& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Terms restricted to subsets satisfying pred.
  template <class Pred>
  BasicGrassmann filter(Pred pred) const {
    BasicGrassmann out(n_);
    for (const auto& [m, c] : terms_)
      if (pred(m)) out.terms_.emplace(m, c);
    return out;
  }

  /// Same subsets, coefficients transformed by f into another ring.
  template <class F>
  auto map_coefficients(F f) const -> BasicGrassmann<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    BasicGrassmann<D> out(n_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Re-embeds into a larger algebra, moving generator i to i + offset.
  BasicGrassmann embed(int new_n, int offset = 0) const {
    if (offset < 0 || n_ + offset > new_n) throw DimensionError("embedding does not fit");
    BasicGrassmann out(new_n);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m << offset, c);
    return out;
  }

 private:
  static void check_generators(int n) {
    if (n < 0 || n > kMaxGenerators) throw DimensionError("generator count must be in [0, 62]");
  }

  void check_same(const BasicGrassmann& o) const {
    if (n_ != o.n_)
      throw DimensionError("Grassmann operands live in different algebras (n=" + std::to_string(n_) +
                           " vs " + std::to_string(o.n_) + ")");
  }

  int n_ = 0;
  Terms terms_;
};

using Grassmann = BasicGrassmann<Rational>;

/// body + even nilpotent (even subsets of size >= 2) + odd part.
template <class C>
struct GrassmannSplit {
  C body;
  BasicGrassmann<C> even_nil;
  BasicGrassmann<C> odd;
};

template <class C>
GrassmannSplit<C> gr_split(const BasicGrassmann<C>& a) {
  return {a.body(),
          a.filter([](Mask m) { return m != 0 && subset_size(m) % 2 == 0; }),
          a.filter([](Mask m) { return subset_size(m) % 2 == 1; })};
}

/// The nilpotent part a - body(a).
template <class C>
BasicGrassmann<C> soul(const BasicGrassmann<C>& a) {
  return a.filter([](Mask m) { return m != 0; });
}

/// Parity-preserving algebra homomorphism Lambda_source -> Lambda_target given
/// by generator images.
struct GrassmannHom {
  int source = 0;
  int target = 0;
  std::vector<Grassmann> images;

  static GrassmannHom identity(int n);
  /// All generators to zero: the body projection Lambda_n -> R = Lambda_0.
  static GrassmannHom body_projection(int n);
};

/// True iff every generator image lives in Lambda_target and is purely odd.
bool hom_validate(const GrassmannHom& rho);

/// Image of eta^m under rho (ascending product of generator images).
Grassmann hom_apply_monomial(const GrassmannHom& rho, Mask m);

Grassmann hom_apply(const GrassmannHom& rho, const Grassmann& a);

/// sigma o rho (first rho, then sigma).
GrassmannHom hom_compose(const GrassmannHom& sigma, const GrassmannHom& rho);

/// rho applied to an element with coefficients in any ring C.
template <class C>
BasicGrassmann<C> hom_apply_coeffs(const GrassmannHom& rho, const BasicGrassmann<C>& a) {
  if (a.generators() != rho.source) throw DimensionError("element is not in the source algebra");
  if (!hom_validate(rho)) throw ParityError("homomorphism is not parity preserving");
  BasicGrassmann<C> out(rho.target);
  for (const auto& [m, c] : a.terms()) {
    const Grassmann image = hom_apply_monomial(rho, m);
    for (const auto& [mm, r] : image.terms()) out.add_term(mm, c * CoeffTraits<C>::from_rational(r));
  }
  return out;
}

/// rho (x) Id on Lambda_{source+extra} -> Lambda_{target+extra}: the extra
/// generators sit after rho's and are passed through unchanged.
GrassmannHom hom_extend(const GrassmannHom& rho, int extra);

}  // namespace supermap
