#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap/json_io.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace supermap;
using io::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SUPERMAP_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SUPERMAP_EXAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("eval: identity returns the point") {
  const Run r = run("eval " + data("identity_1_1.json") + " " + data("point_n2.json"));
  REQUIRE(r.code == 0);
  CHECK(io::superpoint_from_json(io::parse_json(r.out)) ==
        io::superpoint_from_json(io::read_json_file(data("point_n2.json"))));
}

TEST_CASE("eval: worked pushforward") {
  const Run r = run("eval " + data("scale_odd.json") + " " + data("point_n2.json"));
  REQUIRE(r.code == 0);
  const SuperPoint nu = io::superpoint_from_json(io::parse_json(r.out));
  Grassmann odd(2);
  odd.add_term(0b01, make_rational(-6));
  CHECK(nu.odd[0] == odd);
  CHECK(nu.even[0] == io::superpoint_from_json(io::read_json_file(data("point_n2.json"))).even[0]);
}

TEST_CASE("malformed parity is a data error") {
  const Run r = run("eval " + data("bad_parity.json") + " " + data("point_n2.json"));
  CHECK(r.code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("verify nosuch").code == 2);
  CHECK(run("verify morphism --inject-fault nosuch").code == 2);
  CHECK(run("eval /nonexistent.json /nonexistent.json").code == 2);
}

TEST_CASE("compose with identity") {
  const Run r = run("compose " + data("identity_1_1.json") + " " + data("scale_odd.json"));
  REQUIRE(r.code == 0);
  CHECK(io::morphism_from_json(io::parse_json(r.out)) == io::morphism_from_json(io::read_json_file(data("scale_odd.json"))));
}

TEST_CASE("decompose") {
  const Run c = run("decompose " + data("classical.json") + " -n 0");
  REQUIRE(c.code == 0);
  const json jc = io::parse_json(c.out);
  REQUIRE(jc["coefficients"].size() == 1);
  CHECK(jc["coefficients"][0]["order_along_body"] == 0);

  const Run v = run("decompose " + data("vector_field.json") + " -n 2");
  REQUIRE(v.code == 0);
  const json jv = io::parse_json(v.out);
  REQUIRE(jv["coefficients"].size() == 4);
  const json& xi = jv["coefficients"][3];
  CHECK(xi["index"] == json::array({1, 2}));
  CHECK(xi["order_along_body"] == 1);
  CHECK(xi["parity"] == 0);
}

TEST_CASE("chart: flat") {
  const Run r = run("chart " + data("mapping_point.json") + " " + data("chart_flat.json") + " --geometry flat:1:0");
  REQUIRE(r.code == 0);
  const json j = io::parse_json(r.out);
  REQUIRE(j["samples"].size() == 2);
  // x^2 + 2x eta_1 theta^1 shifted by f = x^2: only 2x eta_1 theta^1 remains.
  const SuperPoint s = io::superpoint_from_json(j["samples"][1]["chart"]);
  Grassmann expected(2);
  expected.add_term(0b11, make_rational(-2));
  CHECK(s.even[0] == expected);
}

TEST_CASE("chart: sphere transitions") {
  const Run r = run("chart " + data("sphere_representative.json") + " " + data("chart_sphere.json") + " --geometry sphere2");
  REQUIRE(r.code == 0);
  const json j = io::parse_json(r.out);
  REQUIRE(j["samples"].size() == 2);
  for (const auto& s : j["samples"]) {
    CHECK(s["deviation"].get<double>() < 1e-6);
    CHECK(s["supersmooth"]["verdict"] == "PASS");
  }
}

TEST_CASE("verify writes a report file") {
  const std::string out = (std::filesystem::temp_directory_path() / "supermap_cli_test_report.json").string();
  std::remove(out.c_str());
  const Run r = run("verify grassmann --cases 5 --out " + out);
  CHECK(r.code == 0);
  CHECK(io::read_json_file(out)["verdict"] == "PASS");
  std::remove(out.c_str());
}
