#include "supermap/mapspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace supermap {

void MappingPoint::validate() const {
  morphism.validate();
  if (n < 0 || n > morphism.q) throw DimensionError("mapping point level exceeds the odd source dimension");
}

PointPair sc_point_to_pair(const MappingPoint& phi_n) {
  phi_n.validate();
  const SuperMorphism& M = phi_n.morphism;
  PointPair pair{phi_n.n, M.p, phi_n.q(), {}, {}, {}};
  for (const auto& f : M.even) {
    const Polynomial b = f.component(0);
    pair.body.push_back(b);
    pair.even_section.push_back(f - SuperFunction::from_polynomial(M.q, b));
  }
  pair.odd_section = M.odd;
  return pair;
}

MappingPoint sc_pair_to_point(const PointPair& pair) {
  const int q = pair.n + pair.q;
  if (pair.body.size() != pair.even_section.size()) throw DimensionError("pair: body and even section lengths differ");
  MappingPoint out;
  out.n = pair.n;
  out.morphism = SuperMorphism{pair.p, q, static_cast<int>(pair.body.size()), static_cast<int>(pair.odd_section.size()),
                               {}, {}};
  for (std::size_t j = 0; j < pair.body.size(); ++j) {
    const SuperFunction& s = pair.even_section[j];
    if (!s.component(0).is_zero()) throw ParityError("even section has a body component");
    if (pair.body[j].variables() != pair.p) throw DimensionError("body map has the wrong variable count");
    out.morphism.even.push_back(SuperFunction::from_polynomial(q, pair.body[j]) + s);
  }
  out.morphism.odd = pair.odd_section;
  out.validate();
  return out;
}

MappingPoint sc_functor_action(const GrassmannHom& rho, const MappingPoint& phi_n) {
  phi_n.validate();
  if (!hom_validate(rho)) throw ParityError("sc_functor_action: invalid homomorphism");
  if (rho.source != phi_n.n) throw DimensionError("sc_functor_action: homomorphism source differs from the level");
  const int q = phi_n.q();
  const GrassmannHom ext = hom_extend(rho, q);
  const SuperMorphism& M = phi_n.morphism;
  MappingPoint out;
  out.n = rho.target;
  out.morphism = SuperMorphism{M.p, rho.target + q, M.p2, M.q2, {}, {}};
  for (const auto& f : M.even) out.morphism.even.emplace_back(M.p, ext.target, hom_apply_coeffs(ext, f.value()));
  for (const auto& f : M.odd) out.morphism.odd.emplace_back(M.p, ext.target, hom_apply_coeffs(ext, f.value()));
  return out;
}

bool BodyDomain::contains(std::span<const Rational> body) const {
  std::vector<Rational> y(body.begin(), body.end());
  if (!premap.empty()) {
    y.clear();
    for (const auto& f : premap) y.push_back(f.evaluate(body));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < lo.size() && lo[i] && !(y[i] > *lo[i])) return false;
    if (i < hi.size() && hi[i] && !(y[i] < *hi[i])) return false;
  }
  return true;
}

bool BodyDomain::empty() const {
  for (std::size_t i = 0; i < std::min(lo.size(), hi.size()); ++i)
    if (lo[i] && hi[i] && *lo[i] >= *hi[i]) return true;
  return false;
}

BodyDomain BodyDomain::intersect(const BodyDomain& a, const BodyDomain& b) {
  if (!(a.premap == b.premap)) throw PreconditionError("domains expressed in different coordinates");
  BodyDomain out;
  out.premap = a.premap;
  const std::size_t n = std::max({a.lo.size(), a.hi.size(), b.lo.size(), b.hi.size()});
  auto at = [](const std::vector<std::optional<Rational>>& v, std::size_t i) {
    return i < v.size() ? v[i] : std::optional<Rational>{};
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto l1 = at(a.lo, i), l2 = at(b.lo, i), h1 = at(a.hi, i), h2 = at(b.hi, i);
    out.lo.push_back(!l1 ? l2 : !l2 ? l1 : std::optional<Rational>(std::max(*l1, *l2)));
    out.hi.push_back(!h1 ? h2 : !h2 ? h1 : std::optional<Rational>(std::min(*h1, *h2)));
  }
  return out;
}

LambdaPointMap::LambdaPointMap(int n, int p, int q, int p2, int q2) : n_(n), p_(p), q_(q), p2_(p2), q2_(q2) {
  if (n < 0 || n > 20) throw DimensionError("LambdaPointMap level out of range");
  for (int parity = 0; parity < 2; ++parity) {
    const int count = parity == 0 ? p : q;
    for (int i = 0; i < count; ++i)
      for (Mask S = 0; S <= full_mask(n); ++S)
        if (subset_size(S) % 2 == parity) inputs_.push_back({parity == 1, i, S});
  }
}

int LambdaPointMap::input_index(bool odd, int index, Mask subset) const {
  const int per = n_ == 0 ? 1 : (1 << (n_ - 1));
  if (odd && n_ == 0) throw DimensionError("no odd coefficients at level 0");
  // Within a coordinate, subsets of one parity appear in increasing mask order.
  int rank = 0;
  for (Mask S = 0; S < subset; ++S)
    if (subset_size(S) % 2 == subset_size(subset) % 2) ++rank;
  return (odd ? p_ * per : 0) + index * per + rank;
}

BasicSuperPoint<Polynomial> LambdaPointMap::symbolic_input() const {
  const int V = static_cast<int>(inputs_.size());
  BasicSuperPoint<Polynomial> x;
  x.n = n_;
  x.even.assign(p_, BasicGrassmann<Polynomial>(n_));
  x.odd.assign(q_, BasicGrassmann<Polynomial>(n_));
  for (int v = 0; v < V; ++v) {
    const auto& c = inputs_[v];
    (c.odd ? x.odd : x.even)[c.index].add_term(c.subset, Polynomial::variable(V, v));
  }
  return x;
}

std::vector<Rational> LambdaPointMap::flatten(const SuperPoint& x) const {
  if (x.n != n_ || x.p() != p_ || x.q() != q_) throw DimensionError("point shape differs from the map's source");
  x.validate();
  std::vector<Rational> v;
  v.reserve(inputs_.size());
  for (const auto& c : inputs_) v.push_back((c.odd ? x.odd : x.even)[c.index].coefficient(c.subset));
  return v;
}

SuperPoint LambdaPointMap::unflatten(std::span<const Rational> values) const {
  if (values.size() != inputs_.size()) throw DimensionError("coefficient vector has the wrong length");
  SuperPoint x;
  x.n = n_;
  x.even.assign(p_, Grassmann(n_));
  x.odd.assign(q_, Grassmann(n_));
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto& c = inputs_[v];
    (c.odd ? x.odd : x.even)[c.index].add_term(c.subset, values[v]);
  }
  return x;
}

namespace {

SuperPoint evaluate_outputs(const std::vector<BasicGrassmann<Polynomial>>& outs, int n, int p2,
                            std::span<const Rational> vals) {
  SuperPoint y;
  y.n = n;
  for (std::size_t j = 0; j < outs.size(); ++j) {
    Grassmann g(n);
    for (const auto& [S, f] : outs[j].terms()) g.add_term(S, f.evaluate(vals));
    (static_cast<int>(j) < p2 ? y.even : y.odd).push_back(std::move(g));
  }
  return y;
}

BasicGrassmann<Polynomial> with_variables(const BasicGrassmann<Polynomial>& g, int V) {
  BasicGrassmann<Polynomial> out(g.generators());
  for (const auto& [S, f] : g.terms()) out.add_term(S, f.promoted(V));
  return out;
}

}  // namespace

SuperPoint LambdaPointMap::apply(const SuperPoint& x) const {
  const auto vals = flatten(x);
  if (!domain_.contains(x.body())) throw DomainError("body outside the domain of the Lambda-point map");
  return evaluate_outputs(outputs_, n_, p2_, vals);
}

std::vector<std::vector<BasicGrassmann<Polynomial>>> LambdaPointMap::jacobian() const {
  const int V = static_cast<int>(inputs_.size());
  std::vector<std::vector<BasicGrassmann<Polynomial>>> J(V);
  for (int v = 0; v < V; ++v) {
    const MultiIndex e = MultiIndex::unit(V, v);
    for (const auto& out : outputs_) {
      BasicGrassmann<Polynomial> d(n_);
      for (const auto& [S, f] : out.terms()) d.add_term(S, poly_derive(f.promoted(V), e));
      J[v].push_back(std::move(d));
    }
  }
  return J;
}

namespace {

using NumericJacobian = std::vector<std::vector<Grassmann>>;

NumericJacobian evaluate_jacobian(const std::vector<std::vector<BasicGrassmann<Polynomial>>>& J, int n,
                                  std::span<const Rational> vals) {
  NumericJacobian out(J.size());
  for (std::size_t v = 0; v < J.size(); ++v)
    for (const auto& d : J[v]) {
      Grassmann g(n);
      for (const auto& [S, f] : d.terms()) g.add_term(S, f.evaluate(vals));
      out[v].push_back(std::move(g));
    }
  return out;
}

SuperPoint apply_jacobian(const NumericJacobian& J, int n, int p2, int outs, std::span<const Rational> tv) {
  SuperPoint y;
  y.n = n;
  for (int j = 0; j < outs; ++j) {
    Grassmann g(n);
    for (std::size_t v = 0; v < tv.size(); ++v)
      if (tv[v] != 0) g += J[v][j] * tv[v];
    (j < p2 ? y.even : y.odd).push_back(std::move(g));
  }
  return y;
}

SuperPoint scale_point(const Grassmann& lambda, const SuperPoint& x) {
  SuperPoint y = x;
  for (auto& e : y.even) e = lambda * e;
  for (auto& o : y.odd) o = lambda * o;
  return y;
}

}  // namespace

SuperPoint LambdaPointMap::differential(const SuperPoint& kappa, const SuperPoint& tau) const {
  const auto vals = flatten(kappa);
  const auto tv = flatten(tau);
  const auto J = evaluate_jacobian(jacobian(), n_, vals);
  return apply_jacobian(J, n_, p2_, p2_ + q2_, tv);
}

LambdaPointMap lambda_map_from_morphism(const SuperMorphism& phi, int n) {
  phi.validate();
  LambdaPointMap F(n, phi.p, phi.q, phi.p2, phi.q2);
  const int V = static_cast<int>(F.inputs().size());
  const auto y = pushforward(phi, F.symbolic_input());
  for (const auto& e : y.even) F.outputs().push_back(with_variables(e, V));
  for (const auto& o : y.odd) F.outputs().push_back(with_variables(o, V));
  return F;
}

LambdaPointMap engineered_square_map(int p, int q, int n, Mask subset) {
  if (p < 1 || subset == 0 || subset_size(subset) % 2 != 0 || (subset & ~full_mask(n)) != 0)
    throw PreconditionError("engineered_square_map needs an even non-empty subset and an even coordinate");
  LambdaPointMap F(n, p, q, p, q);
  const int V = static_cast<int>(F.inputs().size());
  const auto x = F.symbolic_input();
  for (const auto& e : x.even) F.outputs().push_back(with_variables(e, V));
  for (const auto& o : x.odd) F.outputs().push_back(with_variables(o, V));
  auto& first = F.outputs()[0];
  const Polynomial c = first.coefficient(subset);
  first.add_term(subset, c * c - c);
  return F;
}

std::vector<SuperPoint> spanning_tangents(const LambdaPointMap& F) {
  std::vector<SuperPoint> out;
  std::vector<Rational> v(F.inputs().size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = 1;
    out.push_back(F.unflatten(v));
    v[i] = 0;
  }
  return out;
}

std::vector<Grassmann> spanning_scalars(int n) {
  std::vector<Grassmann> out;
  for (Mask T = 0; T <= full_mask(n); ++T)
    if (subset_size(T) % 2 == 0) out.push_back(Grassmann::monomial(n, T, 1));
  return out;
}

SmoothnessVerdict supersmooth_check(const LambdaPointMap& F, const std::vector<SuperPoint>& points,
                                    const std::vector<SuperPoint>& tangents, const std::vector<Grassmann>& scalars) {
  SmoothnessVerdict verdict;
  const auto J = F.jacobian();
  const int outs = F.p2() + F.q2();
  for (const auto& kappa : points) {
    const auto vals = F.flatten(kappa);
    if (!F.domain().contains(kappa.body())) throw DomainError("supersmooth_check: sample point outside the domain");
    const auto JK = evaluate_jacobian(J, F.n(), vals);
    for (const auto& tau : tangents) {
      const SuperPoint dtau = apply_jacobian(JK, F.n(), F.p2(), outs, F.flatten(tau));
      for (const auto& lambda : scalars) {
        if (lambda.generators() != F.n() || !lambda.is_even()) throw ParityError("scalars must be even elements of Lambda_n");
        const SuperPoint lhs = apply_jacobian(JK, F.n(), F.p2(), outs, F.flatten(scale_point(lambda, tau)));
        const SuperPoint rhs = scale_point(lambda, dtau);
        ++verdict.checks;
        if (!(lhs == rhs)) {
          verdict.pass = false;
          verdict.witness = SmoothnessWitness{kappa, tau, lambda, lhs, rhs};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

CancellationReport lambda_cancellation(const SuperPoint& kappa, const std::vector<Grassmann>& scalars, int r) {
  CancellationReport rep;
  std::vector<Grassmann> nil;
  for (const auto& e : kappa.even) nil.push_back(soul(e));
  for_each_multi_index(nil.size(), static_cast<unsigned>(r), [&](const MultiIndex& I) {
    Grassmann pw = Grassmann::scalar(kappa.n, 1);
    for (std::size_t i = 0; i < I.size(); ++i)
      for (unsigned t = 0; t < I[i]; ++t) pw = pw * nil[i];
    for (const auto& lambda : scalars) {
      if (lambda.body() != 0) continue;
      ++rep.products;
      if (!pw.is_zero()) ++rep.nonzero_powers;
      if (!(lambda * pw).is_zero()) rep.all_vanish = false;
    }
  });
  return rep;
}

namespace {

bool is_identity(const std::vector<Polynomial>& maps) {
  const int p = static_cast<int>(maps.size());
  for (int i = 0; i < p; ++i)
    if (!(maps[i] == Polynomial::variable(p, i))) return false;
  return true;
}

std::vector<std::vector<Polynomial>> compose_matrix(const std::vector<std::vector<Polynomial>>& M,
                                                    const std::vector<Polynomial>& inner, int bound) {
  std::vector<std::vector<Polynomial>> out;
  for (const auto& row : M) {
    std::vector<Polynomial> r;
    for (const auto& f : row) r.push_back(poly_compose(f, inner, bound));
    out.push_back(r);
  }
  return out;
}

std::vector<std::vector<Polynomial>> mat_mul(const std::vector<std::vector<Polynomial>>& A,
                                             const std::vector<std::vector<Polynomial>>& B, int p) {
  const std::size_t n = A.size();
  std::vector<std::vector<Polynomial>> C(n, std::vector<Polynomial>(B.empty() ? 0 : B[0].size(), Polynomial(p)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < B.size(); ++k)
      for (std::size_t j = 0; j < B[k].size(); ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

void check_chart(const SuperChart& c, int bound) {
  const int p = static_cast<int>(c.to_model.size());
  if (static_cast<int>(c.from_model.size()) != p) throw DimensionError("chart inverse has the wrong arity");
  if (!is_identity(std::vector<Polynomial>{[&] {
        std::vector<Polynomial> r;
        for (const auto& f : c.from_model) r.push_back(poly_compose(f, c.to_model, bound));
        return r;
      }()}))
    throw PreconditionError("chart inverse does not invert the chart");
  const auto prod = mat_mul(c.fibre, c.fibre_inverse, p);
  for (std::size_t i = 0; i < prod.size(); ++i)
    for (std::size_t j = 0; j < prod[i].size(); ++j)
      if (!(prod[i][j] == Polynomial::constant(p, i == j ? 1 : 0)))
        throw PreconditionError("fibre inverse does not invert the fibre map");
}

}  // namespace

TransitionData transition_from_charts(const SuperChart& c1, const SuperChart& c2, int degree_bound) {
  check_chart(c1, degree_bound);
  check_chart(c2, degree_bound);
  if (c1.to_model.size() != c2.to_model.size() || c1.fibre.size() != c2.fibre.size())
    throw DimensionError("charts of different model spaces");
  BodyDomain overlap = BodyDomain::intersect(c1.domain, c2.domain);
  if (overlap.empty()) throw DomainError("chart domains do not overlap");
  const int p = static_cast<int>(c1.to_model.size());
  TransitionData t;
  for (const auto& f : c2.to_model) t.body_map.push_back(poly_compose(f, c1.from_model, degree_bound));
  t.fibre = mat_mul(compose_matrix(c2.fibre, c1.from_model, degree_bound),
                    compose_matrix(c1.fibre_inverse, c1.from_model, degree_bound), p);
  t.domain = overlap;
  t.domain.premap = c1.from_model;
  return t;
}

SuperMorphism transition_morphism(const TransitionData& t) {
  const int p = t.p(), q = t.q();
  SuperMorphism m{p, q, p, q, {}, {}};
  for (const auto& f : t.body_map) m.even.push_back(SuperFunction::from_polynomial(q, f));
  for (int a = 0; a < q; ++a) {
    SuperFunction s(p, q);
    for (int b = 0; b < q; ++b) s.add_component(Mask{1} << b, t.fibre[a][b]);
    m.odd.push_back(s);
  }
  return m;
}

LambdaPointMap chart_transition_map(const TransitionData& t, int n, int r) {
  if (r < 0) r = n / 2;
  const SuperMorphism m = transition_morphism(t);
  LambdaPointMap F(n, t.p(), t.q(), t.p(), t.q());
  const int V = static_cast<int>(F.inputs().size());
  const auto x = F.symbolic_input();
  std::vector<SuperFunction> sfs = m.even;
  sfs.insert(sfs.end(), m.odd.begin(), m.odd.end());
  const auto T = taylor_table<Polynomial>(sfs, x.body(), r);
  std::vector<BasicGrassmann<Polynomial>> nil;
  for (const auto& e : x.even) nil.push_back(soul(e));
  for (const auto& g : exp_pair<Polynomial>(T, nil, x.odd, x.n)) F.outputs().push_back(with_variables(g, V));
  F.domain() = t.domain;
  return F;
}

MappingPoint mapping_chart_flat(const std::vector<Polynomial>& f, const MappingPoint& phi_n) {
  phi_n.validate();
  const SuperMorphism& M = phi_n.morphism;
  if (static_cast<int>(f.size()) != M.p2) throw DimensionError("base map has the wrong target dimension");
  MappingPoint out = phi_n;
  for (int j = 0; j < M.p2; ++j) {
    if (f[j].variables() != M.p) throw DimensionError("base map has the wrong source dimension");
    out.morphism.even[j] -= SuperFunction::from_polynomial(M.q, f[j]);
  }
  return out;
}

std::vector<SuperPoint> mapping_chart_samples(const GeometryBackend& g, const std::vector<Polynomial>& f,
                                              const MappingPoint& phi_n,
                                              const std::vector<std::vector<Rational>>& x_samples) {
  if (g.kind != GeometryKind::Flat)
    throw PreconditionError("polynomial base maps need the flat backend; use sphere_chart_transitions");
  if (g.dim() != phi_n.morphism.p2 || g.rank() != phi_n.morphism.q2)
    throw DimensionError("mapping point target differs from the backend's model space");
  const MappingPoint chart = mapping_chart_flat(f, phi_n);
  std::vector<SuperPoint> out;
  for (std::size_t i = 0; i < x_samples.size(); ++i) {
    if (static_cast<int>(x_samples[i].size()) != phi_n.p())
      throw DimensionError("sample " + std::to_string(i) + " has the wrong dimension");
    out.push_back(chart.morphism.point_at(x_samples[i]));
  }
  return out;
}

ModelPoint to_model_point(const SuperPoint& x) {
  ModelPoint y;
  y.n = x.n;
  const auto conv = [](const Rational& c) { return to_double(c); };
  for (const auto& e : x.even) y.even.push_back(e.map_coefficients(conv));
  for (const auto& o : x.odd) y.odd.push_back(o.map_coefficients(conv));
  return y;
}

namespace {

Polynomial rounded_shifted(const BasicPolynomial<double>& inc, double base, const std::vector<Rational>& center,
                           int r) {
  const int p = static_cast<int>(center.size());
  Polynomial delta(p);
  delta.add_term(MultiIndex(p), rational_from_double(base));
  const BasicPolynomial<double> lifted = inc.promoted(p);
  for (const auto& [I, c] : lifted.terms()) delta.add_term(I, rational_from_double(c));
  std::vector<Polynomial> shift;
  for (int i = 0; i < p; ++i) shift.push_back(Polynomial::variable(p, i) - Polynomial::constant(p, center[i]));
  return poly_compose(delta, shift, std::max(r, 0));
}

double max_deviation(const SuperPoint& exact, const ModelPoint& num) {
  double dev = 0;
  auto cmp = [&](const Grassmann& a, const GrassmannD& b) {
    for (const auto& [S, c] : a.terms()) dev = std::max(dev, std::abs(to_double(c) - b.coefficient(S)));
    for (const auto& [S, c] : b.terms()) dev = std::max(dev, std::abs(to_double(a.coefficient(S)) - c));
  };
  for (std::size_t i = 0; i < exact.even.size(); ++i) cmp(exact.even[i], num.even[i]);
  for (std::size_t i = 0; i < exact.odd.size(); ++i) cmp(exact.odd[i], num.odd[i]);
  return dev;
}

}  // namespace

std::vector<SphereTransitionSample> sphere_chart_transitions(const GeometryBackend& g, const std::vector<Vec>& f,
                                                             const std::vector<Vec>& g_points,
                                                             const MappingPoint& tau,
                                                             const std::vector<std::vector<Rational>>& x_samples) {
  if (g.kind != GeometryKind::Sphere2) throw PreconditionError("sphere_chart_transitions needs the sphere backend");
  tau.validate();
  if (tau.morphism.p2 != 2 || tau.morphism.q2 != 2) throw DimensionError("chart representative must target R^{2|2}");
  if (f.size() != x_samples.size() || g_points.size() != x_samples.size())
    throw DimensionError("sample counts differ");
  std::vector<SphereTransitionSample> out;
  for (std::size_t i = 0; i < x_samples.size(); ++i) {
    try {
      SphereTransitionSample s;
      s.x = x_samples[i];
      const SuperPoint kappa = tau.morphism.point_at(s.x);
      const int N = kappa.n;
      const int r = default_order(N);
      const ModelPoint kd = to_model_point(kappa);
      s.numeric = superchart_pointwise(g, g_points[i], superchart_inverse(g, f[i], kd, r), r);
      s.direct = chart_transition_pointwise(g, f[i], g_points[i], kd, r);

      const std::vector<Rational> center = kappa.body();
      const auto T = transfer_table(g, f[i], g_points[i], kd.body(), r);
      for (int j = 0; j < 2; ++j) s.exact_model.body_map.push_back(rounded_shifted(T.even_part(j), T.base[j], center, r));
      for (int a = 0; a < 2; ++a) {
        std::vector<Polynomial> row;
        for (int b = 0; b < 2; ++b)
          row.push_back(rounded_shifted(T.increments[2 + a].coefficient(Mask{1} << b), 0.0, center, r));
        s.exact_model.fibre.push_back(row);
      }
      for (const auto& c : center) {
        s.exact_model.domain.lo.push_back(c - make_rational(1, 2));
        s.exact_model.domain.hi.push_back(c + make_rational(1, 2));
      }
      const LambdaPointMap F = chart_transition_map(s.exact_model, N, r);
      s.exact_value = F.apply(kappa);
      s.deviation = max_deviation(s.exact_value, s.numeric);
      s.smooth = supersmooth_check(F, {kappa}, spanning_tangents(F), spanning_scalars(N));
      out.push_back(std::move(s));
    } catch (const DomainError& e) {
      throw DomainError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace supermap
