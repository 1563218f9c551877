#include "supermap/superfun.hpp"

#include "supermap/morphism.hpp"

#include <string>

namespace supermap {

SuperFunction::SuperFunction(int p, int q) : p_(p), q_(q), value_(q) {
  if (p < 0) throw DimensionError("negative even dimension");
}

SuperFunction::SuperFunction(int p, int q, BasicGrassmann<Polynomial> value) : p_(p), q_(q), value_(std::move(value)) {
  if (value_.generators() != q) throw DimensionError("superfunction value has the wrong odd dimension");
  normalize();
}

void SuperFunction::normalize() {
  bool ok = true;
  for (const auto& [J, f] : value_.terms())
    if (f.variables() != p_) ok = false;
  if (ok) return;
  BasicGrassmann<Polynomial> out(q_);
  for (const auto& [J, f] : value_.terms()) out.add_term(J, f.promoted(p_));
  value_ = std::move(out);
}

SuperFunction SuperFunction::constant(int p, int q, const Rational& c) {
  SuperFunction f(p, q);
  f.add_component(0, Polynomial::constant(p, c));
  return f;
}

SuperFunction SuperFunction::from_polynomial(int q, const Polynomial& g) {
  SuperFunction f(g.variables(), q);
  f.add_component(0, g);
  return f;
}

SuperFunction SuperFunction::even_coordinate(int p, int q, int i) {
  SuperFunction f(p, q);
  f.add_component(0, Polynomial::variable(p, i));
  return f;
}

SuperFunction SuperFunction::odd_coordinate(int p, int q, int a) {
  if (a < 0 || a >= q) throw DimensionError("odd coordinate index out of range");
  SuperFunction f(p, q);
  f.add_component(Mask{1} << a, Polynomial::constant(p, 1));
  return f;
}

Polynomial SuperFunction::component(Mask J) const {
  auto it = value_.terms().find(J);
  return it == value_.terms().end() ? Polynomial(p_) : it->second;
}

void SuperFunction::add_component(Mask J, const Polynomial& f) { value_.add_term(J, f.promoted(p_)); }

int SuperFunction::degree() const {
  int d = -1;
  for (const auto& [J, f] : value_.terms()) d = std::max(d, f.degree());
  return d;
}

Grassmann SuperFunction::value_at(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != p_) throw DimensionError("body point has the wrong dimension");
  Grassmann out(q_);
  for (const auto& [J, f] : value_.terms()) out.add_term(J, f.evaluate(x));
  return out;
}

void SuperFunction::check_same(const SuperFunction& o) const {
  if (p_ != o.p_ || q_ != o.q_)
    throw DimensionError("superfunctions on R^{" + std::to_string(p_) + "|" + std::to_string(q_) + "} and R^{" +
                         std::to_string(o.p_) + "|" + std::to_string(o.q_) + "}");
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  check_same(o);
  value_ += o.value_;
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) {
  check_same(o);
  value_ -= o.value_;
  return *this;
}

SuperFunction operator*(const SuperFunction& a, const Rational& s) {
  return SuperFunction(a.p_, a.q_, a.value_ * Polynomial::constant(a.p_, s));
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  a.check_same(b);
  return SuperFunction(a.p_, a.q_, a.value_ * b.value_);
}

SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b) { return a * b; }

SuperPoint point_apply(const GrassmannHom& rho, const SuperPoint& nu) {
  if (nu.n != rho.source) throw DimensionError("point is not over the source of the homomorphism");
  SuperPoint out;
  out.n = rho.target;
  for (const auto& e : nu.even) out.even.push_back(hom_apply(rho, e));
  for (const auto& o : nu.odd) out.odd.push_back(hom_apply(rho, o));
  return out;
}

SuperFunction sf_substitute(const SuperFunction& sigma, const SuperMorphism& phi, int degree_bound) {
  phi.validate();
  if (sigma.p() != phi.p2 || sigma.q() != phi.q2) throw DimensionError("sf_substitute: superfunction is not on the target");

  std::vector<int> even_deg, odd_deg;
  for (const auto& f : phi.even) even_deg.push_back(std::max(f.degree(), 0));
  for (const auto& f : phi.odd) odd_deg.push_back(std::max(f.degree(), 0));
  for (const auto& [J, s] : sigma.value().terms()) {
    int jd = 0;
    for (Mask m = J; m != 0; m &= m - 1) jd += odd_deg[std::countr_zero(m)];
    for (const auto& [I, c] : s.terms()) {
      int d = jd;
      for (std::size_t i = 0; i < I.size(); ++i) d += static_cast<int>(I[i]) * even_deg[i];
      if (d > degree_bound)
        throw DegreeBoundError("substitution degree " + std::to_string(d) + " exceeds bound " +
                               std::to_string(degree_bound));
    }
  }

  return SuperFunction(phi.p, phi.q, sf_eval(sigma, phi.symbolic_point()));
}

}  // namespace supermap
