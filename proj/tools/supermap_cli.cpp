// supermap: JSON front end for the library and the verification suites.
#include "supermap/json_io.hpp"
#include "supermap/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace supermap;
using io::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const json& j, const std::string& out) {
  const std::string text = io::dump(j);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw SchemaError(out + ": cannot write file");
  f << text;
}

int cmd_eval(const std::string& morphism_file, const std::string& point_file, const std::string& out) {
  const SuperMorphism phi = io::morphism_from_json(io::read_json_file(morphism_file));
  const SuperPoint mu = io::superpoint_from_json(io::read_json_file(point_file));
  emit(io::to_json(pushforward(phi, mu)), out);
  return 0;
}

int cmd_compose(const std::string& psi_file, const std::string& phi_file, int bound, const std::string& out) {
  const SuperMorphism psi = io::morphism_from_json(io::read_json_file(psi_file));
  const SuperMorphism phi = io::morphism_from_json(io::read_json_file(phi_file));
  emit(io::to_json(morphism_compose(psi, phi, bound)), out);
  return 0;
}

int cmd_decompose(const std::string& file, int n, int max_order, std::uint64_t seed, int bound, const std::string& out) {
  const SuperMorphism phi = io::morphism_from_json(io::read_json_file(file));
  std::vector<SuperFunction> coords;
  for (int j = 0; j < phi.p2; ++j) coords.push_back(SuperFunction::even_coordinate(phi.p2, phi.q2, j));
  for (int a = 0; a < phi.q2; ++a) coords.push_back(SuperFunction::odd_coordinate(phi.p2, phi.q2, a));
  const auto coefs = eta_decompose(phi, n, coords, bound);
  OrderCheckOptions o;
  o.seed = seed;
  json list = json::array();
  for (const auto& c : coefs) {
    json images = json::array();
    bool zero = true;
    for (const auto& [g, v] : c.table) {
      images.push_back(io::to_json(v));
      zero = zero && v.is_zero();
    }
    const int along_body = certified_order(c, JetMode::Even, max_order, o);
    const int along_morphism = certified_order(c, JetMode::Super, max_order, o);
    list.push_back(json{{"index", mask_to_subset(c.index)},
                        {"parity", c.parity()},
                        {"vanishes_on_coordinates", zero},
                        {"order_along_body", along_body < 0 ? json() : json(along_body)},
                        {"order_along_morphism", along_morphism < 0 ? json() : json(along_morphism)},
                        {"coordinate_images", images}});
  }
  emit(json{{"n", n}, {"max_order", max_order}, {"seed", seed}, {"coefficients", list}}, out);
  return 0;
}

std::vector<std::vector<Rational>> samples_from(const json& j) {
  std::vector<std::vector<Rational>> xs;
  if (!j.is_array()) throw SchemaError("$.samples: expected an array");
  for (std::size_t i = 0; i < j.size(); ++i)
    xs.push_back(io::rational_vector_from_json(j[i], "$.samples[" + std::to_string(i) + "]"));
  return xs;
}

std::vector<Vec> points_from(const json& j, const std::string& path) {
  std::vector<Vec> out;
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(io::double_vector_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int cmd_chart(const std::string& point_file, const std::string& input_file, const std::string& geometry,
              const std::string& out) {
  const MappingPoint phi = io::mapping_point_from_json(io::read_json_file(point_file));
  const json in = io::read_json_file(input_file);
  const GeometryBackend g = GeometryBackend::parse(geometry);
  if (!in.contains("samples") || !in.contains("base")) throw SchemaError(input_file + ": needs \"samples\" and \"base\"");
  const auto xs = samples_from(in["samples"]);
  json result{{"geometry", g.name()}};
  if (g.kind == GeometryKind::Flat) {
    std::vector<Polynomial> f;
    for (std::size_t i = 0; i < in["base"].size(); ++i)
      f.push_back(io::polynomial_from_json(in["base"][i], "$.base[" + std::to_string(i) + "]"));
    json samples = json::array();
    const auto images = mapping_chart_samples(g, f, phi, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      json x = json::array();
      for (const auto& c : xs[i]) x.push_back(io::to_json(c));
      samples.push_back(json{{"x", x}, {"chart", io::to_json(images[i])}});
    }
    result["samples"] = samples;
  } else {
    if (!in.contains("to")) throw SchemaError(input_file + ": sphere charts need \"to\" points");
    const auto runs = sphere_chart_transitions(g, points_from(in["base"], "$.base"), points_from(in["to"], "$.to"), phi, xs);
    json samples = json::array();
    for (const auto& s : runs) {
      json x = json::array();
      for (const auto& c : s.x) x.push_back(io::to_json(c));
      samples.push_back(json{{"x", x},
                             {"transition", io::to_json(s.numeric)},
                             {"exact_model", io::to_json(s.exact_model)},
                             {"exact_value", io::to_json(s.exact_value)},
                             {"deviation", s.deviation},
                             {"supersmooth", io::to_json(s.smooth)}});
    }
    result["samples"] = samples;
  }
  emit(result, out);
  return 0;
}

int cmd_verify(const std::string& suite, const verify::Options& opts, int case_id, bool serial, const std::string& out) {
  if (!verify::known_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "' (grassmann, superfun, morphism, jetcalc, geometry, mapspace, all)\n";
    return kExitUsage;
  }
  const auto start = std::chrono::steady_clock::now();
  const json report = case_id >= 0 ? verify::case_report(suite, case_id, opts) : verify::run_report(suite, opts, !serial);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report, out);
  std::cerr << "verify " << suite << ": " << report.value("verdict", "FAIL") << " in " << secs << " s\n";
  return verify::report_passed(report) ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Grassmann, superfunction and supermanifold-morphism calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  int bound = kDefaultDegreeBound;
  app.add_option("--out", out, "Write JSON here instead of stdout");
  app.add_option("--degree-bound", bound, "Total-degree guard for polynomial composition")->check(CLI::Range(1, 256));

  std::string f1, f2;
  auto* eval = app.add_subcommand("eval", "Push a SuperPoint forward along a morphism");
  eval->add_option("morphism", f1)->required()->check(CLI::ExistingFile);
  eval->add_option("point", f2)->required()->check(CLI::ExistingFile);

  auto* compose = app.add_subcommand("compose", "Compose morphisms: psi after phi");
  compose->add_option("psi", f1)->required()->check(CLI::ExistingFile);
  compose->add_option("phi", f2)->required()->check(CLI::ExistingFile);

  int n = 0, max_order = 4;
  std::uint64_t seed = 42;
  auto* decompose = app.add_subcommand("decompose", "Eta-coefficients of a morphism and their certified orders");
  decompose->add_option("morphism", f1)->required()->check(CLI::ExistingFile);
  decompose->add_option("-n,--n", n, "Number of leading odd source coordinates treated as eta's")->required();
  decompose->add_option("--max-order", max_order, "Largest order tried")->check(CLI::Range(0, 12));
  decompose->add_option("--seed", seed, "Seed for body points and random pairs");

  std::string geometry = "flat:1";
  auto* chart = app.add_subcommand("chart", "Chart images of a mapping point at sample points");
  chart->add_option("mapping_point", f1)->required()->check(CLI::ExistingFile);
  chart->add_option("input", f2, "JSON with samples, base (and to, for the sphere)")->required()->check(CLI::ExistingFile);
  chart->add_option("--geometry", geometry, "flat:M[:R] or sphere2");

  verify::Options vopts;
  std::string suite;
  int case_id = -1;
  bool serial = false;
  auto* ver = app.add_subcommand("verify", "Run a seeded verification suite");
  ver->add_option("suite", suite, "grassmann, superfun, morphism, jetcalc, geometry, mapspace or all")->required();
  ver->add_option("--seed", vopts.seed, "Base seed");
  ver->add_option("--cases", vopts.cases, "Cases per suite")->check(CLI::Range(0, 1000000));
  ver->add_option("--geometry", vopts.geometry, "Backend for the geometry suite");
  ver->add_option("--case", case_id, "Replay a single case id")->check(CLI::NonNegativeNumber);
  ver->add_option("--inject-fault", vopts.fault, "Mutation to inject (sign)");
  ver->add_flag("--serial", serial, "Use the serial reference runner");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(f1, f2, out);
    if (*compose) return cmd_compose(f1, f2, bound, out);
    if (*decompose) return cmd_decompose(f1, n, max_order, seed, bound, out);
    if (*chart) return cmd_chart(f1, f2, geometry, out);
    if (*ver) {
      vopts.degree_bound = bound;
      try {
        GeometryBackend::parse(vopts.geometry);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (!vopts.fault.empty() && vopts.fault != "sign") {
        std::cerr << "error: unknown fault '" << vopts.fault << "' (known: sign)\n";
        return kExitUsage;
      }
      return cmd_verify(suite, vopts, case_id, serial, out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
