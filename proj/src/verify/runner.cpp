#include "cases.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace supermap::verify {

CaseContext::CaseContext(std::string suite, int id, const Options& o)
    : rng(case_seed(o.seed, suite, static_cast<std::uint64_t>(id))), opts(o) {
  result.suite = std::move(suite);
  result.id = id;
}

namespace {

void bump(CaseResult& r, const std::string& name) {
  for (auto& [k, v] : r.checks)
    if (k == name) {
      ++v;
      return;
    }
  r.checks.emplace_back(name, 1);
}

}  // namespace

void CaseContext::check(const std::string& name, bool ok, const std::function<json()>& witness) {
  bump(result, name);
  if (ok) return;
  result.pass = false;
  result.failed_check = name;
  result.witness = witness ? witness() : json();
  throw CaseStop{};
}

void CaseContext::measure(const std::string& name, double err, double tol, const std::function<json()>& witness) {
  auto it = std::find_if(result.tolerances.begin(), result.tolerances.end(),
                         [&](const Tolerance& t) { return t.name == name; });
  if (it == result.tolerances.end()) {
    result.tolerances.push_back({name, 0, tol});
    it = result.tolerances.end() - 1;
  }
  it->max_error = std::max(it->max_error, err);
  check(name, err <= tol, [&] {
    json w = witness ? witness() : json::object();
    w["error"] = err;
    w["tolerance"] = tol;
    return w;
  });
}

void CaseContext::note(const std::string& name) { bump(result, name); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"grassmann", "superfun", "morphism",
                                                 "jetcalc",   "geometry", "mapspace"};
  return names;
}

bool known_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

CaseResult run_case(const std::string& suite, int id, const Options& opts) {
  static const std::map<std::string, void (*)(CaseContext&)> table = {
      {"grassmann", detail::grassmann_case}, {"superfun", detail::superfun_case},
      {"morphism", detail::morphism_case},   {"jetcalc", detail::jetcalc_case},
      {"geometry", detail::geometry_case},   {"mapspace", detail::mapspace_case}};
  auto it = table.find(suite);
  if (it == table.end()) throw PreconditionError("unknown suite: " + suite);
  CaseContext c(suite, id, opts);
  try {
    it->second(c);
  } catch (const CaseStop&) {
  } catch (const std::exception& e) {
    c.result.pass = false;
    c.result.failed_check = "exception";
    c.result.witness = json{{"error", e.what()}};
  }
  return c.result;
}

std::vector<CaseResult> run_cases_parallel(const std::string& suite, const Options& opts) {
  std::vector<CaseResult> results(static_cast<std::size_t>(std::max(opts.cases, 0)));
  const int n = static_cast<int>(results.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) results[i] = run_case(suite, i, opts);
  std::sort(results.begin(), results.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return results;
}

std::vector<CaseResult> run_cases_serial(const std::string& suite, const Options& opts) {
  std::vector<CaseResult> results;
  for (int i = 0; i < opts.cases; ++i) results.push_back(run_case(suite, i, opts));
  return results;
}

namespace {

std::string replay_command(const std::string& suite, int id, const Options& opts) {
  std::string cmd = "verify " + suite + " --seed " + std::to_string(opts.seed) + " --case " + std::to_string(id);
  if (suite == "geometry") cmd += " --geometry " + opts.geometry;
  if (opts.degree_bound != kDefaultDegreeBound) cmd += " --degree-bound " + std::to_string(opts.degree_bound);
  if (!opts.fault.empty()) cmd += " --inject-fault " + opts.fault;
  return cmd;
}

constexpr std::size_t kMaxReportedFailures = 10;

json header(const std::string& suite, const Options& opts) {
  return json{{"suite", suite},
              {"seed", opts.seed},
              {"cases", opts.cases},
              {"rng", Rng::kAlgorithm},
              {"geometry", opts.geometry},
              {"degree_bound", opts.degree_bound},
              {"fault", opts.fault.empty() ? json() : json(opts.fault)}};
}

}  // namespace

json suite_report(const std::string& suite, const Options& opts, const std::vector<CaseResult>& results) {
  std::vector<std::pair<std::string, std::size_t>> checks;
  std::vector<Tolerance> tols;
  json failures = json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& r : results) {
    for (const auto& [k, v] : r.checks) {
      auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& e) { return e.first == k; });
      if (it == checks.end())
        checks.emplace_back(k, v);
      else
        it->second += v;
    }
    for (const auto& t : r.tolerances) {
      auto it = std::find_if(tols.begin(), tols.end(), [&](const Tolerance& e) { return e.name == t.name; });
      if (it == tols.end())
        tols.push_back(t);
      else
        it->max_error = std::max(it->max_error, t.max_error);
    }
    if (r.pass) {
      ++passed;
      continue;
    }
    ++failed;
    if (failures.size() < kMaxReportedFailures)
      failures.push_back(json{{"case", r.id},
                              {"check", r.failed_check},
                              {"replay", replay_command(suite, r.id, opts)},
                              {"witness", r.witness}});
  }
  json jc = json::object();
  for (const auto& [k, v] : checks) jc[k] = v;
  json jt = json::object();
  for (const auto& t : tols) jt[t.name] = json{{"max_error", t.max_error}, {"tolerance", t.tolerance}};
  json out{{"name", suite}, {"cases", results.size()}, {"passed", passed}, {"failed", failed}, {"checks", jc}};
  if (!tols.empty()) out["tolerances"] = jt;
  out["failures"] = failures;
  if (failed > failures.size()) out["failures_omitted"] = failed - failures.size();
  return out;
}

json run_report(const std::string& suite, const Options& opts, bool parallel) {
  if (!known_suite(suite)) throw PreconditionError("unknown suite: " + suite);
  FaultGuard guard(opts.fault);
  json report = header(suite, opts);
  json suites = json::array();
  std::size_t passed = 0, failed = 0;
  const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  for (const auto& name : names) {
    const auto results = parallel ? run_cases_parallel(name, opts) : run_cases_serial(name, opts);
    json s = suite_report(name, opts, results);
    passed += s["passed"].get<std::size_t>();
    failed += s["failed"].get<std::size_t>();
    suites.push_back(std::move(s));
  }
  report["passed"] = passed;
  report["failed"] = failed;
  report["verdict"] = failed == 0 ? "PASS" : "FAIL";
  report["suites"] = suites;
  return report;
}

json case_report(const std::string& suite, int id, const Options& opts) {
  if (!known_suite(suite) || suite == "all") throw PreconditionError("--case needs a single suite, got: " + suite);
  FaultGuard guard(opts.fault);
  const CaseResult r = run_case(suite, id, opts);
  json report = header(suite, opts);
  report.erase("cases");
  report["case"] = id;
  report["verdict"] = r.pass ? "PASS" : "FAIL";
  json jc = json::object();
  for (const auto& [k, v] : r.checks) jc[k] = v;
  report["checks"] = jc;
  if (!r.pass) report["failure"] = json{{"check", r.failed_check}, {"witness", r.witness}};
  return report;
}

bool report_passed(const json& report) { return report.value("verdict", "FAIL") == "PASS"; }

FaultGuard::FaultGuard(const std::string& fault) {
  if (fault.empty()) return;
  if (fault != "sign") throw PreconditionError("unknown fault: " + fault + " (known: sign)");
  fault::reversed_odd_products = true;
}

FaultGuard::~FaultGuard() { fault::reversed_odd_products = false; }

}  // namespace supermap::verify
