#include "supermap/morphism.hpp"

#include "supermap/jetcalc.hpp"
#include "supermap/random.hpp"

#include <algorithm>

namespace supermap {

SuperMorphism SuperMorphism::identity(int p, int q) {
  SuperMorphism id{p, q, p, q, {}, {}};
  for (int i = 0; i < p; ++i) id.even.push_back(SuperFunction::even_coordinate(p, q, i));
  for (int a = 0; a < q; ++a) id.odd.push_back(SuperFunction::odd_coordinate(p, q, a));
  return id;
}

void SuperMorphism::validate() const {
  if (static_cast<int>(even.size()) != p2 || static_cast<int>(odd.size()) != q2)
    throw DimensionError("morphism needs p2 even and q2 odd pullbacks");
  for (const auto& f : even) {
    if (f.p() != p || f.q() != q) throw DimensionError("pullback is not a superfunction on the source");
    if (!f.is_even()) throw ParityError("even pullback is not purely even");
  }
  for (const auto& f : odd) {
    if (f.p() != p || f.q() != q) throw DimensionError("pullback is not a superfunction on the source");
    if (!f.is_odd()) throw ParityError("odd pullback is not purely odd");
  }
}

int SuperMorphism::degree() const {
  int d = -1;
  for (const auto& f : even) d = std::max(d, f.degree());
  for (const auto& f : odd) d = std::max(d, f.degree());
  return d;
}

BasicSuperPoint<Polynomial> SuperMorphism::symbolic_point() const {
  BasicSuperPoint<Polynomial> pt;
  pt.n = q;
  for (const auto& f : even) pt.even.push_back(f.value());
  for (const auto& f : odd) pt.odd.push_back(f.value());
  return pt;
}

SuperPoint SuperMorphism::point_at(std::span<const Rational> x) const {
  SuperPoint pt;
  pt.n = q;
  for (const auto& f : even) pt.even.push_back(f.value_at(x));
  for (const auto& f : odd) pt.odd.push_back(f.value_at(x));
  return pt;
}

SuperMorphism morphism_compose(const SuperMorphism& psi, const SuperMorphism& phi, int degree_bound) {
  if (phi.p2 != psi.p || phi.q2 != psi.q) throw DimensionError("morphism_compose: target of phi is not the source of psi");
  psi.validate();
  SuperMorphism out{phi.p, phi.q, psi.p2, psi.q2, {}, {}};
  for (const auto& f : psi.even) out.even.push_back(sf_substitute(f, phi, degree_bound));
  for (const auto& f : psi.odd) out.odd.push_back(sf_substitute(f, phi, degree_bound));
  return out;
}

SuperPoint pushforward_general(const SuperMorphism& phi, const SuperPoint& mu) {
  phi.validate();
  if (mu.p() != phi.p || mu.q() != phi.q) throw DimensionError("pushforward: point is not a point of the source");
  mu.validate();
  std::vector<SuperFunction> all = phi.even;
  all.insert(all.end(), phi.odd.begin(), phi.odd.end());
  const JetMap table = taylor_table<Rational>(all, mu.body(), mu.n / 2);
  std::vector<Grassmann> nil;
  for (const auto& e : mu.even) nil.push_back(soul(e));
  std::vector<Grassmann> values = exp_pair<Rational>(table, nil, mu.odd, mu.n);
  SuperPoint nu;
  nu.n = mu.n;
  nu.even.assign(values.begin(), values.begin() + phi.p2);
  nu.odd.assign(values.begin() + phi.p2, values.end());
  return nu;
}

std::map<Mask, SuperFunction> eta_split(const SuperFunction& f, int n) {
  if (n < 0 || n > f.q()) throw DimensionError("eta_split: more eta generators than odd coordinates");
  std::map<Mask, SuperFunction> parts;
  parts.try_emplace(0, f.p(), f.q() - n);
  const Mask eta = full_mask(n);
  for (const auto& [M, poly] : f.value().terms()) {
    auto [it, inserted] = parts.try_emplace(M & eta, f.p(), f.q() - n);
    it->second.add_component(M >> n, poly);
  }
  return parts;
}

SuperFunction eta_join(const std::map<Mask, SuperFunction>& parts, int n) {
  if (parts.empty()) throw PreconditionError("eta_join: no parts");
  const int p = parts.begin()->second.p();
  const int q = parts.begin()->second.q();
  SuperFunction f(p, q + n);
  for (const auto& [I, part] : parts) {
    if (part.p() != p || part.q() != q) throw DimensionError("eta_join: parts on different spaces");
    for (const auto& [K, poly] : part.value().terms()) f.add_component(I | (K << n), poly);
  }
  return f;
}

SuperFunction EtaCoefficient::apply(const SuperFunction& g, int degree_bound) const {
  const auto parts = eta_split(sf_substitute(g, *morphism, degree_bound), n);
  auto it = parts.find(index);
  return it == parts.end() ? SuperFunction(morphism->p, morphism->q - n) : it->second;
}

namespace {

/// Theta-components of the eta^I part of a Lambda_{n+q} value.
Grassmann eta_component(const Grassmann& v, Mask index, int n) {
  Grassmann out(v.generators() - n);
  const Mask eta = full_mask(n);
  for (const auto& [M, c] : v.terms())
    if ((M & eta) == index) out.add_term(M >> n, c);
  return out;
}

}  // namespace

Grassmann EtaCoefficient::value_at(const SuperFunction& g, std::span<const Rational> x) const {
  return eta_component(sf_eval(g, morphism->point_at(x)), index, n);
}

std::vector<EtaCoefficient> eta_decompose(const SuperMorphism& phi, int n, const std::vector<SuperFunction>& probes,
                                          int degree_bound) {
  phi.validate();
  if (n < 0 || n > phi.q) throw DimensionError("eta_decompose: level exceeds the odd source dimension");
  auto shared = std::make_shared<const SuperMorphism>(phi);
  std::vector<EtaCoefficient> out;
  for (Mask I = 0; I <= full_mask(n); ++I) out.push_back(EtaCoefficient{I, n, shared, {}});
  for (const auto& g : probes) {
    const auto parts = eta_split(sf_substitute(g, phi, degree_bound), n);
    for (auto& c : out) {
      auto it = parts.find(c.index);
      c.table.emplace_back(g, it == parts.end() ? SuperFunction(phi.p, phi.q - n) : it->second);
    }
  }
  return out;
}

const char* jet_mode_name(JetMode m) { return m == JetMode::Even ? "even" : "super"; }

std::vector<std::vector<Rational>> sample_body_points(int p, int count, std::uint64_t seed) {
  static const Rational lattice[] = {make_rational(-1), make_rational(-1, 2), make_rational(0), make_rational(1, 2),
                                     make_rational(1), make_rational(3, 2)};
  constexpr int L = 6;
  std::vector<std::vector<Rational>> pts;
  Rng rng(splitmix64(seed ^ 0x6c61747469636531ULL));
  if (p <= 3) {
    int total = 1;
    for (int i = 0; i < p; ++i) total *= L;
    for (int c = 0; c < total; ++c) {
      std::vector<Rational> x;
      for (int i = 0, v = c; i < p; ++i, v /= L) x.push_back(lattice[v % L]);
      pts.push_back(std::move(x));
    }
    for (int i = total - 1; i > 0; --i) std::swap(pts[i], pts[rng.uniform(0, i)]);
    if (static_cast<int>(pts.size()) > count) pts.resize(count);
  } else {
    for (int c = 0; c < count; ++c) {
      std::vector<Rational> x;
      for (int i = 0; i < p; ++i) x.push_back(lattice[rng.uniform(0, L - 1)]);
      pts.push_back(std::move(x));
    }
  }
  return pts;
}

namespace {

struct Probe {
  MultiIndex A;
  Mask B = 0;
};

std::vector<Probe> kernel_probes(int p2, int q2, int k, JetMode mode, int max_degree) {
  std::vector<Probe> out;
  for (Mask B = 0; B <= full_mask(q2); ++B) {
    const int lo = mode == JetMode::Even ? k + 1 : std::max(0, k + 1 - subset_size(B));
    if (lo > max_degree) continue;
    for (const auto& A : multi_indices(p2, lo, max_degree)) out.push_back({A, B});
  }
  return out;
}

SuperFunction probe_function(const Probe& pr, const std::vector<Rational>& y0, int q2) {
  const int p2 = static_cast<int>(y0.size());
  Polynomial f = Polynomial::constant(p2, 1);
  for (int i = 0; i < p2; ++i) {
    const Polynomial lin = Polynomial::variable(p2, i) - Polynomial::constant(p2, y0[i]);
    for (unsigned t = 0; t < pr.A[i]; ++t) f = f * lin;
  }
  SuperFunction s(p2, q2);
  s.add_component(pr.B, f);
  return s;
}

Grassmann observe(const Grassmann& v, JetMode mode) {
  if (mode == JetMode::Even) return v;
  return Grassmann::scalar(0, v.body());
}

}  // namespace

OrderVerdict order_bound_check(const EtaCoefficient& coef, int k, JetMode mode, const OrderCheckOptions& opts) {
  if (k < 0) throw PreconditionError("order_bound_check: k must be non-negative");
  const SuperMorphism& M = *coef.morphism;
  const int max_degree = opts.probe_degree < 0 ? 2 * k + 2 : opts.probe_degree;
  const auto points = opts.body_points.empty() ? sample_body_points(M.p, opts.points, opts.seed) : opts.body_points;
  const auto probes = kernel_probes(M.p2, M.q2, k, mode, max_degree);

  OrderVerdict v;
  v.k = k;
  v.mode = mode;
  v.index = coef.index;
  Rng rng(splitmix64(opts.seed + 0x9e37ULL * static_cast<std::uint64_t>(k + 1) + coef.index));

  for (const auto& x : points) {
    const SuperPoint pt = M.point_at(x);
    std::vector<Rational> y0;
    std::vector<Grassmann> shifted;
    for (const auto& e : pt.even) {
      y0.push_back(e.body());
      shifted.push_back(e - Grassmann::scalar(pt.n, e.body()));
    }

    auto fail_with = [&](const SuperFunction& g, const SuperFunction& h) {
      v.pass = false;
      v.witness = OrderWitness{g, g + h, x, observe(coef.value_at(g, x), mode), observe(coef.value_at(g + h, x), mode)};
    };

    // Every kernel probe, through the algebra structure of the pullback.
    std::vector<std::vector<Grassmann>> powers(M.p2);
    for (const auto& pr : probes) {
      Grassmann val = Grassmann::scalar(pt.n, 1);
      for (int i = 0; i < M.p2 && !val.is_zero(); ++i) {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Grassmann::scalar(pt.n, 1));
        while (pw.size() <= pr.A[i]) pw.push_back(pw.back() * shifted[i]);
        val = val * pw[pr.A[i]];
      }
      for (Mask m = pr.B; m != 0 && !val.is_zero(); m &= m - 1) val = val * pt.odd[std::countr_zero(m)];
      ++v.checks;
      if (!observe(eta_component(val, coef.index, coef.n), mode).is_zero()) {
        fail_with(random_superfunction(rng, M.p2, M.q2, 2, rng.uniform(0, 1), 2), probe_function(pr, y0, M.q2));
        return v;
      }
    }

    // Random pairs (g, g + h) with h in the kernel, through sf_eval.
    for (int t = 0; t < opts.trials && !probes.empty(); ++t) {
      const SuperFunction g = random_superfunction(rng, M.p2, M.q2, max_degree, rng.uniform(0, 1), 3);
      SuperFunction h(M.p2, M.q2);
      for (int s = 0; s < 3; ++s)
        h += probe_function(probes[rng.uniform(0, static_cast<int>(probes.size()) - 1)], y0, M.q2) *
             rng.small_rational();
      ++v.checks;
      if (!(observe(coef.value_at(g, x), mode) == observe(coef.value_at(g + h, x), mode))) {
        fail_with(g, h);
        return v;
      }
    }
  }
  return v;
}

int certified_order(const EtaCoefficient& coef, JetMode mode, int max_k, const OrderCheckOptions& opts) {
  for (int k = 0; k <= max_k; ++k)
    if (order_bound_check(coef, k, mode, opts).pass) return k;
  return -1;
}

}  // namespace supermap
