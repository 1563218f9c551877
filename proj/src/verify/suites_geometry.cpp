#include "cases.hpp"

#include "supermap/geometry.hpp"
#include "supermap/mapspace.hpp"

#include <cmath>

namespace supermap::verify::detail {

using io::to_json;

namespace {

constexpr double kRoundtripTol = 1e-9;
constexpr double kDerivativeTol = 1e-6;

double norm(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double max_diff(const Vec& a, const Vec& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec random_vec(Rng& rng, int d, double scale) {
  Vec v;
  for (int i = 0; i < d; ++i) v.push_back(rng.uniform_real(-scale, scale));
  return v;
}

Vec random_point_on(const GeometryBackend& g, Rng& rng) {
  if (g.kind == GeometryKind::Flat) return random_vec(rng, g.m, 2.0);
  for (;;) {
    Vec v = random_vec(rng, 3, 1.0);
    const double n = norm(v);
    if (n < 0.2) continue;
    for (auto& x : v) x /= n;
    return v;
  }
}

/// Tangent vector at x with frame coordinates of norm exactly `length`.
Vec random_tangent(const GeometryBackend& g, Rng& rng, const Vec& x, double length) {
  Vec coords = random_vec(rng, g.dim(), 1.0);
  double n = norm(coords);
  if (n < 1e-3) {
    coords.assign(g.dim(), 0.0);
    coords[0] = 1;
    n = 1;
  }
  for (auto& c : coords) c *= length / n;
  return from_frame(g, x, coords);
}

/// Point at geodesic distance `dist` from x.
Vec nearby_point(const GeometryBackend& g, Rng& rng, const Vec& x, double dist) {
  return geo_exp(g, x, random_tangent(g, rng, x, dist));
}

json vec_json(const Vec& v) { return json(v); }

GrassmannD random_nil_double(Rng& rng, int n, int parity, double scale) {
  GrassmannD g(n);
  for (Mask S = 1; S <= full_mask(n); ++S)
    if (subset_size(S) % 2 == parity && rng.chance(1, 2)) g.add_term(S, rng.uniform_real(-scale, scale));
  return g;
}

double model_diff(const ModelPoint& a, const ModelPoint& b) {
  double d = 0;
  auto cmp = [&](const GrassmannD& x, const GrassmannD& y) {
    for (const auto& [S, c] : x.terms()) d = std::max(d, std::abs(c - y.coefficient(S)));
    for (const auto& [S, c] : y.terms()) d = std::max(d, std::abs(c - x.coefficient(S)));
  };
  for (std::size_t i = 0; i < a.even.size(); ++i) cmp(a.even[i], b.even[i]);
  for (std::size_t i = 0; i < a.odd.size(); ++i) cmp(a.odd[i], b.odd[i]);
  return d;
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Tensor-product central difference for d^I at z0 with step h.
template <class F>
std::vector<double> central_difference(const F& fn, const Vec& z0, const MultiIndex& I, double h) {
  const int d = static_cast<int>(z0.size());
  std::vector<double> acc;
  std::vector<int> j(d, 0);
  for (;;) {
    double w = 1;
    Vec z = z0;
    for (int i = 0; i < d; ++i) {
      const int k = static_cast<int>(I[i]);
      w *= binom(k, j[i]) * ((j[i] % 2) ? -1.0 : 1.0);
      z[i] += (0.5 * k - j[i]) * h;
    }
    const std::vector<double> v = fn(z);
    if (acc.empty()) acc.assign(v.size(), 0.0);
    for (std::size_t t = 0; t < v.size(); ++t) acc[t] += w * v[t];
    int i = 0;
    while (i < d && ++j[i] > static_cast<int>(I[i])) j[i++] = 0;
    if (i == d) break;
  }
  const double scale = std::pow(h, static_cast<double>(I.total()));
  for (auto& a : acc) a /= scale;
  return acc;
}

/// Two Richardson steps over h, h/2, h/4 (central errors are even in h).
template <class F>
std::vector<double> richardson(const F& fn, const Vec& z0, const MultiIndex& I, double h) {
  const auto d1 = central_difference(fn, z0, I, h);
  const auto d2 = central_difference(fn, z0, I, h / 2);
  const auto d4 = central_difference(fn, z0, I, h / 4);
  std::vector<double> out(d1.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    const double r1 = (4 * d2[t] - d1[t]) / 3;
    const double r2 = (4 * d4[t] - d2[t]) / 3;
    out[t] = (16 * r2 - r1) / 15;
  }
  return out;
}

double fd_step(unsigned order) {
  static const double steps[] = {0.01, 0.01, 0.02, 0.05, 0.1};
  return steps[std::min(order, 4u)];
}

void taylor_vs_fd(CaseContext& c, const GeometryBackend& g, const Vec& a, const Vec& cc, const Vec& z0) {
  constexpr int kOrder = 4;
  const int d = g.dim(), rk = g.rank();
  const auto T = transfer_table(g, a, cc, z0, kOrder);
  // Components: d chart coordinates, then the rk x rk fibre matrix row-major.
  auto fn = [&](const Vec& z) {
    const TransferValue v = transfer_value(g, a, cc, z);
    std::vector<double> out = v.chart;
    for (const auto& row : v.fibre) out.insert(out.end(), row.begin(), row.end());
    return out;
  };
  auto table_value = [&](std::size_t t, const MultiIndex& I) {
    if (static_cast<int>(t) < d) {
      if (I.total() == 0) return T.base[t];
      return T.increments[t].body().coefficient(I);
    }
    const int i = (static_cast<int>(t) - d) / rk, b = (static_cast<int>(t) - d) % rk;
    return T.increments[d + i].coefficient(Mask{1} << b).promoted(d).coefficient(I);
  };
  for (const auto& I : multi_indices(d, 0, kOrder)) {
    const auto fd = I.total() == 0 ? fn(z0) : richardson(fn, z0, I, fd_step(I.total()));
    const double inv_fact = 1.0 / to_double(I.factorial());
    for (std::size_t t = 0; t < fd.size(); ++t) {
      const double expected = fd[t] * inv_fact;
      const double got = table_value(t, I);
      const double err = std::abs(got - expected) / std::max(std::abs(expected), 1.0);
      c.measure("taylor_vs_fd", err, kDerivativeTol, [&] {
        return json{{"a", vec_json(a)}, {"c", vec_json(cc)}, {"z0", vec_json(z0)},  {"index", I.entries()},
                    {"component", t}, {"table", got},        {"finite_difference", expected}};
      });
    }
  }
}

/// Small chart representative R^{1|n+q} -> R^{2|2} at f: coefficients scaled
/// down so the body stays well inside the chart domain.
MappingPoint small_representative(Rng& rng, int n, int q) {
  SuperMorphism m = random_morphism(rng, 1, n + q, 2, 2, 2, 2);
  const Rational s = make_rational(1, 24);
  for (auto& f : m.even) f = f * s;
  for (auto& f : m.odd) f = f * s;
  return MappingPoint{n, m};
}

}  // namespace

void geometry_case(CaseContext& c) {
  Rng& rng = c.rng;
  const GeometryBackend g = GeometryBackend::parse(c.opts.geometry);
  const bool sphere = g.kind == GeometryKind::Sphere2;
  const double reach = sphere ? 3.0 : 4.0;

  const Vec x = random_point_on(g, rng);
  const Vec v = random_tangent(g, rng, x, rng.uniform_real(0.0, reach));
  const Vec y = geo_exp(g, x, v);
  c.measure("exp_log_roundtrip", max_diff(geo_log(g, x, y), v), kRoundtripTol,
            [&] { return json{{"x", vec_json(x)}, {"v", vec_json(v)}}; });

  const Vec w = sphere ? random_tangent(g, rng, x, 1.0) : random_vec(rng, g.rank(), 1.0);
  const Vec pw = geo_pt(g, x, y, w);
  c.measure("transport_isometry", std::abs(norm(pw) - norm(w)), kRoundtripTol,
            [&] { return json{{"x", vec_json(x)}, {"y", vec_json(y)}, {"w", vec_json(w)}}; });
  c.measure("transport_inverse", max_diff(geo_pt(g, y, x, pw), w), kRoundtripTol,
            [&] { return json{{"x", vec_json(x)}, {"y", vec_json(y)}, {"w", vec_json(w)}}; });

  // Bundle exponential: vertical, horizontal, and the local isometry with p = pi(a).
  const BundlePoint a{x, w};
  const Vec vert = sphere ? random_tangent(g, rng, x, 0.5) : random_vec(rng, g.rank(), 0.5);
  const BundlePoint av = bundle_exp(g, a, {Vec(g.ambient_dim(), 0.0), vert});
  c.measure("bundle_exp_vertical", std::max(max_diff(av.base, x), max_diff(av.fibre, add(w, vert))), kRoundtripTol,
            [&] { return json{{"base", vec_json(x)}, {"fibre", vec_json(w)}, {"vertical", vec_json(vert)}}; });
  const BundlePoint zero{x, Vec(w.size(), 0.0)};
  const BundlePoint ah = bundle_exp(g, zero, {v, Vec(zero.fibre.size(), 0.0)});
  c.measure("bundle_exp_horizontal", std::max(max_diff(ah.base, y), norm(ah.fibre)), kRoundtripTol,
            [&] { return json{{"base", vec_json(x)}, {"horizontal", vec_json(v)}}; });
  const BundlePoint b = bundle_exp(g, a, {v, vert});
  c.measure("local_isometry", std::max(max_diff(b.base, y), max_diff(geo_pt(g, y, x, b.fibre), add(w, vert))),
            kRoundtripTol, [&] {
              return json{{"base", vec_json(x)}, {"fibre", vec_json(w)}, {"horizontal", vec_json(v)},
                          {"vertical", vec_json(vert)}};
            });

  // Trivialization over sampled f.
  std::vector<Vec> f;
  std::vector<BundlePoint> sigma;
  for (int i = 0; i < 3; ++i) {
    f.push_back(random_point_on(g, rng));
    const Vec base = nearby_point(g, rng, f.back(), rng.uniform_real(0.0, reach));
    sigma.push_back({base, sphere ? random_tangent(g, rng, base, 1.0) : random_vec(rng, g.rank(), 1.0)});
  }
  const auto back = local_trivialize_inverse(g, f, local_trivialize(g, f, sigma));
  double triv = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    triv = std::max({triv, max_diff(back[i].base, sigma[i].base), max_diff(back[i].fibre, sigma[i].fibre)});
  c.measure("trivialization_roundtrip", triv, kRoundtripTol, [&] {
    json j = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
      j.push_back(json{{"f", vec_json(f[i])}, {"base", vec_json(sigma[i].base)}, {"fibre", vec_json(sigma[i].fibre)}});
    return j;
  });

  // Taylor tables of the transfer map against finite differences.
  const Vec ta = random_point_on(g, rng);
  const Vec tc = nearby_point(g, rng, ta, rng.uniform_real(0.0, 1.0));
  taylor_vs_fd(c, g, ta, tc, random_vec(rng, g.dim(), 0.5));

  // Superchart at b followed by its inverse.
  {
    const int n = rng.uniform(0, 4);
    ModelPoint tau;
    tau.n = n;
    for (int i = 0; i < g.dim(); ++i) {
      GrassmannD e = random_nil_double(rng, n, 0, 0.3);
      e.add_term(0, rng.uniform_real(-0.5, 0.5));
      tau.even.push_back(e);
    }
    for (int i = 0; i < g.rank(); ++i) tau.odd.push_back(random_nil_double(rng, n, 1, 1.0));
    const Vec bp = random_point_on(g, rng);
    const ModelPoint round = superchart_pointwise(g, bp, superchart_inverse(g, bp, tau));
    c.measure("superchart_roundtrip", model_diff(round, tau), kRoundtripTol,
              [&] { return json{{"b", vec_json(bp)}, {"tau", to_json(tau)}}; });
  }

  // Chart transitions of a small Lambda_n-point representative, via the exact model.
  if (sphere) {
    const int n = rng.uniform(0, 3), q = 1;
    const MappingPoint rep = small_representative(rng, n, q);
    std::vector<Vec> fs, gs;
    std::vector<std::vector<Rational>> xs;
    for (int i = 0; i < 2; ++i) {
      fs.push_back(random_point_on(g, rng));
      gs.push_back(nearby_point(g, rng, fs.back(), rng.uniform_real(0.0, 0.8)));
      xs.push_back({rng.lattice_value()});
    }
    const auto samples = sphere_chart_transitions(g, fs, gs, rep, xs);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      auto wit = [&] {
        return json{{"f", vec_json(fs[i])}, {"g", vec_json(gs[i])}, {"x", to_json(s.x.at(0))}, {"tau", to_json(rep)}};
      };
      c.measure("transition_direct_vs_charts", model_diff(s.numeric, s.direct), kRoundtripTol, wit);
      c.measure("transition_exact_model", s.deviation, kDerivativeTol, wit);
      c.check("transition_supersmooth", s.smooth.pass, [&] {
        json j = wit();
        j["verdict"] = to_json(s.smooth);
        return j;
      });
    }
  }
}

namespace {

/// Triangular polynomial chart on R^p with polynomial inverse, and a fibre
/// frame change D (I + N) with N strictly upper triangular.
SuperChart random_chart(Rng& rng, int p, int q) {
  SuperChart ch;
  std::vector<Polynomial> y, inv;
  for (int i = 0; i < p; ++i) y.push_back(Polynomial::variable(p, i));
  // to_model: z_i = s_i y_i + c_i + a_i y_0^2 (i > 0).
  std::vector<Rational> s, cst, quad;
  for (int i = 0; i < p; ++i) {
    s.push_back(rng.chance(1, 2) ? Rational(1) : rng.small_rational());
    cst.push_back(rng.lattice_value());
    quad.push_back(i > 0 && rng.chance(1, 2) ? rng.small_rational() : Rational(0));
  }
  for (int i = 0; i < p; ++i) {
    Polynomial z = y[i] * s[i] + Polynomial::constant(p, cst[i]);
    if (i > 0) z += y[0] * y[0] * quad[i];
    ch.to_model.push_back(z);
  }
  // from_model: y_0 = (z_0 - c_0)/s_0, y_i = (z_i - c_i - a_i y_0^2)/s_i.
  const Polynomial y0 = (y[0] - Polynomial::constant(p, cst[0])) * (1 / s[0]);
  for (int i = 0; i < p; ++i) {
    if (i == 0) {
      ch.from_model.push_back(y0);
      continue;
    }
    ch.from_model.push_back((y[i] - Polynomial::constant(p, cst[i]) - y0 * y0 * quad[i]) * (1 / s[i]));
  }
  std::vector<Rational> diag;
  for (int a = 0; a < q; ++a) diag.push_back(rng.small_rational());
  const Polynomial upper = q > 1 ? random_polynomial(rng, p, 2, 2) : Polynomial(p);
  ch.fibre.assign(q, std::vector<Polynomial>(q, Polynomial(p)));
  ch.fibre_inverse.assign(q, std::vector<Polynomial>(q, Polynomial(p)));
  for (int a = 0; a < q; ++a) {
    ch.fibre[a][a] = Polynomial::constant(p, diag[a]);
    ch.fibre_inverse[a][a] = Polynomial::constant(p, 1 / diag[a]);
  }
  if (q > 1) {
    // D (I + N) with N = upper e_01; inverse (I - N) D^{-1}.
    ch.fibre[0][1] = upper * diag[0];
    ch.fibre_inverse[0][1] = upper * (-1 / diag[1]);
  }
  for (int i = 0; i < p; ++i) {
    ch.domain.lo.push_back(Rational(-6) + rng.lattice_value());
    ch.domain.hi.push_back(Rational(6) + rng.lattice_value());
  }
  return ch;
}

json chart_json(const SuperChart& ch) {
  json fib = json::array(), fibi = json::array();
  for (std::size_t a = 0; a < ch.fibre.size(); ++a) {
    json r1 = json::array(), r2 = json::array();
    for (std::size_t b = 0; b < ch.fibre.size(); ++b) {
      r1.push_back(to_json(ch.fibre[a][b]));
      r2.push_back(to_json(ch.fibre_inverse[a][b]));
    }
    fib.push_back(r1);
    fibi.push_back(r2);
  }
  json to = json::array(), from = json::array();
  for (const auto& f : ch.to_model) to.push_back(to_json(f));
  for (const auto& f : ch.from_model) from.push_back(to_json(f));
  return json{{"to_model", to}, {"from_model", from}, {"fibre", fib}, {"fibre_inverse", fibi}};
}

MappingPoint random_mapping_point(Rng& rng, int n, int p, int q, int p2, int q2) {
  return MappingPoint{n, random_morphism(rng, p, n + q, p2, q2, 3)};
}

std::vector<Grassmann> soul_scalars(int n) {
  std::vector<Grassmann> out;
  for (const auto& l : spanning_scalars(n))
    if (l.body() == 0) out.push_back(l);
  return out;
}

}  // namespace

void mapspace_case(CaseContext& c) {
  Rng& rng = c.rng;
  const int bound = c.opts.degree_bound;

  // Representation and functor laws.
  {
    const int n = rng.uniform(0, 4), p = rng.uniform(1, 2), q = rng.uniform(0, 2);
    const int p2 = rng.uniform(1, 2), q2 = rng.uniform(0, 2);
    const MappingPoint phi = random_mapping_point(rng, n, p, q, p2, q2);
    auto w = [&] { return json{{"phi", to_json(phi)}}; };
    const PointPair pair = sc_point_to_pair(phi);
    c.check("pair_roundtrip", sc_pair_to_point(pair) == phi, w);

    PointPair other{n, p, q, {}, {}, {}};
    for (int j = 0; j < p2; ++j) {
      other.body.push_back(random_polynomial(rng, p, 3, 3));
      SuperFunction s = random_superfunction(rng, p, n + q, 2, 0, 3);
      s -= SuperFunction::from_polynomial(n + q, s.component(0));
      other.even_section.push_back(s);
    }
    for (int j = 0; j < q2; ++j) other.odd_section.push_back(random_superfunction(rng, p, n + q, 2, 1, 3));
    c.check("point_roundtrip", sc_point_to_pair(sc_pair_to_point(other)) == other,
            [&] { return json{{"pair", to_json(other)}}; });

    c.check("functor_identity", sc_functor_action(GrassmannHom::identity(n), phi) == phi, w);
    const int m = rng.uniform(0, 4), k = rng.uniform(0, 4);
    const GrassmannHom rho = random_hom(rng, n, m), sigma = random_hom(rng, m, k);
    auto wr = [&] { return json{{"phi", to_json(phi)}, {"rho", to_json(rho)}, {"sigma", to_json(sigma)}}; };
    c.check("functor_compose",
            sc_functor_action(hom_compose(sigma, rho), phi) == sc_functor_action(sigma, sc_functor_action(rho, phi)),
            wr);

    // Body projection strips every eta.
    const MappingPoint stripped = sc_functor_action(GrassmannHom::body_projection(n), phi);
    bool strip_ok = stripped.n == 0;
    auto eta_free = [&](const SuperFunction& f) { return eta_split(f, n).at(0); };
    for (std::size_t j = 0; j < phi.morphism.even.size() && strip_ok; ++j)
      strip_ok = stripped.morphism.even[j] == eta_free(phi.morphism.even[j]);
    for (std::size_t j = 0; j < phi.morphism.odd.size() && strip_ok; ++j)
      strip_ok = stripped.morphism.odd[j] == eta_free(phi.morphism.odd[j]);
    c.check("functor_body_projection", strip_ok, w);

    // Flat charts: an affine shift of the pair, natural in rho.
    std::vector<Polynomial> f;
    for (int j = 0; j < p2; ++j) f.push_back(random_polynomial(rng, p, 2, 2));
    c.check("chart_natural",
            mapping_chart_flat(f, sc_functor_action(rho, phi)) == sc_functor_action(rho, mapping_chart_flat(f, phi)),
            wr);
    const std::vector<std::vector<Rational>> xs{{rng.lattice_value(), rng.lattice_value()}};
    std::vector<std::vector<Rational>> xp{std::vector<Rational>(xs[0].begin(), xs[0].begin() + p)};
    const auto samples = mapping_chart_samples(GeometryBackend::flat(p2, q2), f, phi, xp);
    bool shift_ok = true;
    for (int j = 0; j < p2; ++j) {
      const Grassmann expected =
          (SuperFunction::from_polynomial(n + q, pair.body[j] - f[j]) + pair.even_section[j]).value_at(xp[0]);
      shift_ok = shift_ok && samples[0].even[j] == expected;
    }
    for (int j = 0; j < q2; ++j) shift_ok = shift_ok && samples[0].odd[j] == pair.odd_section[j].value_at(xp[0]);
    c.check("flat_chart_shift", shift_ok, w);
  }

  // Chart transitions on R^{p|q} at level n.
  const int n = rng.uniform(0, 6);
  const int p = rng.uniform(1, 2), q = n >= 5 && p == 2 ? 0 : rng.uniform(0, 2);
  const SuperChart c1 = random_chart(rng, p, q), c2 = random_chart(rng, p, q);
  const TransitionData t = transition_from_charts(c1, c2, bound);
  const LambdaPointMap F = chart_transition_map(t, n);
  SuperPoint kappa;
  for (int tries = 0;; ++tries) {
    kappa = random_point(rng, n, p, q);
    if (F.domain().contains(kappa.body())) break;
    c.note("kappa_resampled");
    if (tries > 20) throw PreconditionError("no sample point inside the overlap");
  }
  auto wt = [&] {
    return json{{"n", n}, {"chart1", chart_json(c1)}, {"chart2", chart_json(c2)}, {"kappa", to_json(kappa)}};
  };
  c.check("transition_matches_pushforward", F.apply(kappa) == pushforward(transition_morphism(t), kappa), wt);
  const SmoothnessVerdict sv = supersmooth_check(F, {kappa}, spanning_tangents(F), spanning_scalars(n));
  c.check("transition_supersmooth", sv.pass, [&] {
    json j = wt();
    j["verdict"] = to_json(sv);
    return j;
  });
  c.note("transition_level_" + std::to_string(n));
  const CancellationReport cr = lambda_cancellation(kappa, soul_scalars(n), n / 2);
  c.check("top_order_cancellation", cr.all_vanish, wt);
  if (cr.nonzero_powers > 0) c.note("cancellation_nonvacuous");
  if (n <= 4) {
    c.check("order_independent", chart_transition_map(t, n, n / 2 + 1).outputs() == F.outputs(), wt);
    const int m = rng.uniform(0, 4);
    const GrassmannHom rho = random_hom(rng, n, m);
    c.check("transition_natural",
            chart_transition_map(t, m).apply(point_apply(rho, kappa)) == point_apply(rho, F.apply(kappa)), [&] {
              json j = wt();
              j["rho"] = to_json(rho);
              return j;
            });
  }

  // Pushforward maps of morphisms, and one engineered non-morphism map.
  {
    const int nm = rng.uniform(0, 4);
    const SuperMorphism phi = random_morphism(rng, p, q, rng.uniform(1, 2), rng.uniform(0, 2), 3);
    const LambdaPointMap G = lambda_map_from_morphism(phi, nm);
    const SuperPoint mu = random_point(rng, nm, p, q);
    const SmoothnessVerdict gv = supersmooth_check(G, {mu}, spanning_tangents(G), spanning_scalars(nm));
    c.check("morphism_map_supersmooth", gv.pass, [&] { return json{{"phi", to_json(phi)}, {"mu", to_json(mu)}}; });
  }
  if (n >= 2) {
    const LambdaPointMap E = engineered_square_map(1, q, n, 0b11);
    // A zero eta^1 eta^2 coefficient makes the squared slot's differential vanish there.
    SuperPoint mu = random_point(rng, n, 1, q);
    mu.even[0] = mu.even[0].filter([](Mask m) { return m != 0b11; });
    const SmoothnessVerdict ev = supersmooth_check(E, {mu}, spanning_tangents(E), spanning_scalars(n));
    c.check("engineered_map_fails", !ev.pass && ev.witness.has_value(), [&] { return json{{"mu", to_json(mu)}}; });
  }
}

}  // namespace supermap::verify::detail
