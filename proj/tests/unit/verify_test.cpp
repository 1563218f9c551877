#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/random.hpp"
#include "supermap/verify.hpp"

using namespace supermap;
using namespace supermap::verify;

namespace {

Options small(int cases) {
  Options o;
  o.cases = cases;
  return o;
}

bool same(const CaseResult& a, const CaseResult& b) {
  return a.id == b.id && a.pass == b.pass && a.checks == b.checks && a.failed_check == b.failed_check &&
         a.witness == b.witness;
}

}  // namespace

TEST_CASE("parallel runner matches the serial reference") {
  for (const auto& suite : suite_names()) {
    const auto a = run_cases_serial(suite, small(12));
    const auto b = run_cases_parallel(suite, small(12));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK_MESSAGE(same(a[i], b[i]), suite << " case " << i);
  }
}

TEST_CASE("reports are reproducible") {
  const Options o = small(10);
  CHECK(io::dump(run_report("all", o)) == io::dump(run_report("all", o, false)));
  const json r = run_report("grassmann", o);
  CHECK(r["verdict"] == "PASS");
  CHECK(r["suites"][0]["checks"]["mul_associative"] == 10);
  CHECK_FALSE(r.contains("time"));
}

TEST_CASE("different seeds draw different cases") {
  for (std::uint64_t id = 0; id < 5; ++id) {
    CHECK(case_seed(42, "superfun", id) != case_seed(43, "superfun", id));
    CHECK(Rng(case_seed(42, "superfun", id)).next() != Rng(case_seed(43, "superfun", id)).next());
  }
}

TEST_CASE("the sign fault is caught and replays") {
  Options o = small(60);
  o.fault = "sign";
  const json r = run_report("morphism", o);
  CHECK(r["verdict"] == "FAIL");
  const json& f = r["suites"][0]["failures"][0];
  CHECK_FALSE(f["witness"].is_null());
  const std::string replay = f["replay"];
  CHECK(replay.find("--inject-fault sign") != std::string::npos);

  const json one = case_report("morphism", f["case"].get<int>(), o);
  CHECK(one["verdict"] == "FAIL");
  CHECK(one["failure"]["witness"] == f["witness"]);
  CHECK_FALSE(fault::reversed_odd_products);

  o.fault.clear();
  CHECK(case_report("morphism", f["case"].get<int>(), o)["verdict"] == "PASS");
}

TEST_CASE("geometry reports carry tolerances") {
  const json r = run_report("geometry", small(3));
  const json& t = r["suites"][0]["tolerances"];
  CHECK(t["exp_log_roundtrip"]["tolerance"] == 1e-9);
  CHECK(t["taylor_vs_fd"]["tolerance"] == 1e-6);
  CHECK(t["taylor_vs_fd"]["max_error"].get<double>() <= 1e-6);
}

TEST_CASE("failure lists are capped") {
  Options o = small(150);
  o.fault = "sign";
  const json s = run_report("superfun", o)["suites"][0];
  CHECK(s["failures"].size() <= 10);
  if (s["failed"].get<std::size_t>() > 10)
    CHECK(s["failures_omitted"].get<std::size_t>() == s["failed"].get<std::size_t>() - 10);
}

TEST_CASE("unknown names") {
  CHECK_FALSE(known_suite("bogus"));
  CHECK_THROWS_AS(run_report("bogus", small(1)), PreconditionError);
  CHECK_THROWS_AS(FaultGuard("flip"), PreconditionError);
  CHECK_THROWS_AS(case_report("all", 0, small(1)), PreconditionError);
}
