#pragma once

#include "supermap/json_io.hpp"
#include "supermap/random.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace supermap::verify {

using io::json;

struct Options {
  std::uint64_t seed = 42;
  int cases = 200;
  std::string geometry = "sphere2";  // backend for the geometry suite
  int degree_bound = kDefaultDegreeBound;
  std::string fault;  // "" or "sign"
};

struct Tolerance {
  std::string name;
  double max_error = 0;
  double tolerance = 0;
};

struct CaseResult {
  std::string suite;
  int id = 0;
  bool pass = true;
  std::vector<std::pair<std::string, std::size_t>> checks;  // in first-seen order
  std::vector<Tolerance> tolerances;
  std::string failed_check;
  json witness;  // null unless failed
};

/// Per-case state: seeded generator plus check bookkeeping. The first failing
/// check stops the case and keeps its witness.
class CaseContext {
 public:
  CaseContext(std::string suite, int id, const Options& opts);

  Rng rng;
  const Options& opts;

  /// On failure records the witness and throws CaseStop.
  void check(const std::string& name, bool ok, const std::function<json()>& witness);
  /// err <= tol; the per-check maximum is reported.
  void measure(const std::string& name, double err, double tol, const std::function<json()>& witness);
  /// Counts a check that produced no boolean (e.g. a skipped degenerate draw).
  void note(const std::string& name);

  CaseResult result;
};

struct CaseStop {};

/// Suite names accepted by run_suite, without "all".
const std::vector<std::string>& suite_names();
bool known_suite(const std::string& name);

CaseResult run_case(const std::string& suite, int id, const Options& opts);

/// Case fan-out: OpenMP parallel-for and the serial reference. Both return
/// results sorted by case id.
std::vector<CaseResult> run_cases_parallel(const std::string& suite, const Options& opts);
std::vector<CaseResult> run_cases_serial(const std::string& suite, const Options& opts);

/// Report for one suite or for "all"; contains no timing information.
json suite_report(const std::string& suite, const Options& opts, const std::vector<CaseResult>& results);
json run_report(const std::string& suite, const Options& opts, bool parallel = true);
json case_report(const std::string& suite, int id, const Options& opts);
bool report_passed(const json& report);

/// Installs the requested fault for the lifetime of the guard.
class FaultGuard {
 public:
  explicit FaultGuard(const std::string& fault);
  ~FaultGuard();
  FaultGuard(const FaultGuard&) = delete;
  FaultGuard& operator=(const FaultGuard&) = delete;
};

}  // namespace supermap::verify
