#include "supermap/json_io.hpp"

#include <fstream>
#include <sstream>

namespace supermap::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw SchemaError(path + ": " + msg); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& j, const char* key, const std::string& path, int lo = 0, int hi = kMaxGenerators) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) fail(path + "." + key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

const json& array_field(const json& j, const char* key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string string_or_int(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  fail(path, "expected a decimal string");
}

/// Maps syntax-error byte offsets back to line:column.
std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw SchemaError(origin + ":" + location(text, byte) + ": " + msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Rational& r) { return json{{"num", numerator_string(r)}, {"den", denominator_string(r)}}; }

json to_json(const Grassmann& g) {
  json terms = json::array();
  for (const auto& [S, c] : g.terms())
    terms.push_back(json{{"subset", mask_to_subset(S)}, {"num", numerator_string(c)}, {"den", denominator_string(c)}});
  return json{{"n", g.generators()}, {"terms", terms}};
}

json to_json(const GrassmannD& g) {
  json terms = json::array();
  for (const auto& [S, c] : g.terms()) terms.push_back(json{{"subset", mask_to_subset(S)}, {"value", c}});
  return json{{"n", g.generators()}, {"terms", terms}};
}

json to_json(const GrassmannHom& h) {
  json images = json::array();
  for (const auto& g : h.images) images.push_back(to_json(g));
  return json{{"source", h.source}, {"target", h.target}, {"images", images}};
}

json to_json(const Polynomial& f) {
  json terms = json::array();
  for (const auto& [I, c] : f.terms())
    terms.push_back(json{{"exp", I.entries()}, {"num", numerator_string(c)}, {"den", denominator_string(c)}});
  return json{{"p", f.variables()}, {"terms", terms}};
}

json to_json(const SuperFunction& f) {
  json comps = json::array();
  for (const auto& [J, poly] : f.value().terms()) {
    std::vector<int> bits;
    for (int a = 0; a < f.q(); ++a) bits.push_back((J >> a) & 1);
    comps.push_back(json{{"J", bits}, {"poly", to_json(poly)}});
  }
  return json{{"p", f.p()}, {"q", f.q()}, {"components", comps}};
}

json to_json(const SuperMorphism& m) {
  json even = json::array(), odd = json::array();
  for (const auto& f : m.even) even.push_back(to_json(f));
  for (const auto& f : m.odd) odd.push_back(to_json(f));
  return json{{"source", {m.p, m.q}}, {"target", {m.p2, m.q2}}, {"even", even}, {"odd", odd}};
}

json to_json(const MappingPoint& m) {
  json j = json{{"n", m.n}};
  const json body = to_json(m.morphism);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

json to_json(const SuperPoint& x) {
  json even = json::array(), odd = json::array();
  for (const auto& g : x.even) even.push_back(to_json(g));
  for (const auto& g : x.odd) odd.push_back(to_json(g));
  return json{{"n", x.n}, {"even", even}, {"odd", odd}};
}

json to_json(const ModelPoint& x) {
  json even = json::array(), odd = json::array();
  for (const auto& g : x.even) even.push_back(to_json(g));
  for (const auto& g : x.odd) odd.push_back(to_json(g));
  return json{{"n", x.n}, {"even", even}, {"odd", odd}};
}

json to_json(const JetMap& t) {
  json base = json::array();
  for (const auto& b : t.base) base.push_back(to_json(b));
  json point = json::array();
  for (const auto& b : t.source_point) point.push_back(to_json(b));
  json incs = json::array();
  for (const auto& inc : t.increments) {
    json terms = json::array();
    for (const auto& [S, poly] : inc.terms()) terms.push_back(json{{"odd_subset", mask_to_subset(S)}, {"poly", to_json(poly)}});
    incs.push_back(json{{"terms", terms}});
  }
  return json{{"k", t.order},           {"even_dim", t.even_dim}, {"odd_dim", t.odd_dim},
              {"source_point", point}, {"base", base},           {"increments", incs}};
}

json to_json(const PointPair& pp) {
  json body = json::array(), even = json::array(), odd = json::array();
  for (const auto& f : pp.body) body.push_back(to_json(f));
  for (const auto& f : pp.even_section) even.push_back(to_json(f));
  for (const auto& f : pp.odd_section) odd.push_back(to_json(f));
  return json{{"n", pp.n}, {"p", pp.p}, {"q", pp.q}, {"body", body}, {"even_section", even}, {"odd_section", odd}};
}

json to_json(const OrderVerdict& v) {
  json j{{"verdict", v.pass ? "PASS" : "FAIL"},
         {"k", v.k},
         {"mode", jet_mode_name(v.mode)},
         {"index", mask_to_subset(v.index)},
         {"checks", v.checks}};
  if (v.witness) {
    json x = json::array();
    for (const auto& c : v.witness->x) x.push_back(to_json(c));
    j["witness"] = json{{"g", to_json(v.witness->g)},
                        {"g2", to_json(v.witness->g2)},
                        {"x", x},
                        {"lhs", to_json(v.witness->lhs)},
                        {"rhs", to_json(v.witness->rhs)}};
  }
  return j;
}

json to_json(const SmoothnessVerdict& v) {
  json j{{"verdict", v.pass ? "PASS" : "FAIL"}, {"checks", v.checks}};
  if (v.witness)
    j["witness"] = json{{"kappa", to_json(v.witness->kappa)},
                        {"tau", to_json(v.witness->tau)},
                        {"lambda", to_json(v.witness->lambda)},
                        {"lhs", to_json(v.witness->lhs)},
                        {"rhs", to_json(v.witness->rhs)}};
  return j;
}

json to_json(const TransitionData& t) {
  json body = json::array(), fibre = json::array();
  for (const auto& f : t.body_map) body.push_back(to_json(f));
  for (const auto& row : t.fibre) {
    json r = json::array();
    for (const auto& f : row) r.push_back(to_json(f));
    fibre.push_back(r);
  }
  return json{{"body_map", body}, {"fibre", fibre}};
}

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      return slash == std::string::npos ? parse_rational(s, "1") : parse_rational(s.substr(0, slash), s.substr(slash + 1));
    } catch (const SchemaError& e) {
      fail(path, e.what());
    }
  }
  const std::string num = string_or_int(field(j, "num", path), path + ".num");
  const std::string den = j.contains("den") ? string_or_int(j["den"], path + ".den") : "1";
  try {
    return parse_rational(num, den);
  } catch (const SchemaError& e) {
    fail(path, e.what());
  }
}

Grassmann grassmann_from_json(const json& j, const std::string& path) {
  const int n = int_field(j, "n", path);
  Grassmann g(n);
  const json& terms = array_field(j, "terms", path);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = at(path + ".terms", i);
    const json& s = field(terms[i], "subset", tp);
    if (!s.is_array()) fail(tp + ".subset", "expected an array");
    std::vector<int> subset;
    for (const auto& e : s) {
      if (!e.is_number_integer()) fail(tp + ".subset", "expected integers");
      subset.push_back(e.get<int>());
    }
    Mask m = 0;
    try {
      m = subset_to_mask(subset, n);
    } catch (const Error& e) {
      fail(tp + ".subset", e.what());
    }
    g.add_term(m, rational_from_json(terms[i], tp));
  }
  return g;
}

GrassmannHom hom_from_json(const json& j, const std::string& path) {
  GrassmannHom h;
  h.source = int_field(j, "source", path);
  h.target = int_field(j, "target", path);
  const json& images = array_field(j, "images", path);
  if (static_cast<int>(images.size()) != h.source) fail(path + ".images", "expected one image per source generator");
  for (std::size_t i = 0; i < images.size(); ++i) {
    Grassmann g = grassmann_from_json(images[i], at(path + ".images", i));
    if (g.generators() != h.target) fail(at(path + ".images", i), "image not in the target algebra");
    h.images.push_back(std::move(g));
  }
  return h;
}

Polynomial polynomial_from_json(const json& j, const std::string& path) {
  const int p = int_field(j, "p", path, 0, 64);
  Polynomial f(p);
  const json& terms = array_field(j, "terms", path);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = at(path + ".terms", i);
    const json& e = field(terms[i], "exp", tp);
    if (!e.is_array() || static_cast<int>(e.size()) != p) fail(tp + ".exp", "expected " + std::to_string(p) + " exponents");
    std::vector<unsigned> ex;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<long long>() < 0) fail(tp + ".exp", "expected non-negative integers");
      ex.push_back(v.get<unsigned>());
    }
    f.add_term(MultiIndex(std::move(ex)), rational_from_json(terms[i], tp));
  }
  return f;
}

SuperFunction superfunction_from_json(const json& j, const std::string& path) {
  const int p = int_field(j, "p", path, 0, 64);
  const int q = int_field(j, "q", path);
  SuperFunction f(p, q);
  const json& comps = array_field(j, "components", path);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cp = at(path + ".components", i);
    const json& J = field(comps[i], "J", cp);
    if (!J.is_array() || static_cast<int>(J.size()) != q) fail(cp + ".J", "expected " + std::to_string(q) + " bits");
    Mask m = 0;
    for (int a = 0; a < q; ++a) {
      if (!J[a].is_number_integer() || (J[a] != 0 && J[a] != 1)) fail(cp + ".J", "bits must be 0 or 1");
      if (J[a] == 1) m |= Mask{1} << a;
    }
    Polynomial poly = polynomial_from_json(field(comps[i], "poly", cp), cp + ".poly");
    if (poly.variables() != p) fail(cp + ".poly", "expected " + std::to_string(p) + " variables");
    f.add_component(m, poly);
  }
  return f;
}

SuperMorphism morphism_from_json(const json& j, const std::string& path) {
  const json& src = field(j, "source", path);
  const json& tgt = field(j, "target", path);
  auto pair = [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      fail(p, "expected [even, odd] dimensions");
    return std::pair<int, int>{v[0].get<int>(), v[1].get<int>()};
  };
  const auto [p, q] = pair(src, path + ".source");
  const auto [p2, q2] = pair(tgt, path + ".target");
  SuperMorphism m{p, q, p2, q2, {}, {}};
  const json& even = array_field(j, "even", path);
  const json& odd = array_field(j, "odd", path);
  for (std::size_t i = 0; i < even.size(); ++i) m.even.push_back(superfunction_from_json(even[i], at(path + ".even", i)));
  for (std::size_t i = 0; i < odd.size(); ++i) m.odd.push_back(superfunction_from_json(odd[i], at(path + ".odd", i)));
  try {
    m.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return m;
}

MappingPoint mapping_point_from_json(const json& j, const std::string& path) {
  MappingPoint mp;
  mp.morphism = morphism_from_json(j, path);
  mp.n = int_field(j, "n", path, 0, mp.morphism.q);
  return mp;
}

SuperPoint superpoint_from_json(const json& j, const std::string& path) {
  SuperPoint x;
  x.n = int_field(j, "n", path);
  const json& even = array_field(j, "even", path);
  const json& odd = array_field(j, "odd", path);
  for (std::size_t i = 0; i < even.size(); ++i) x.even.push_back(grassmann_from_json(even[i], at(path + ".even", i)));
  for (std::size_t i = 0; i < odd.size(); ++i) x.odd.push_back(grassmann_from_json(odd[i], at(path + ".odd", i)));
  try {
    x.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return x;
}

std::vector<Rational> rational_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], at(path, i)));
  return out;
}

std::vector<double> double_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(at(path, i), "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace supermap::io
