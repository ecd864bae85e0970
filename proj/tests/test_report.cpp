#include <doctest.h>

#include "dyonlab/checks.hpp"
#include "dyonlab/report.hpp"

using namespace dyonlab;

TEST_CASE("json writer: sorted keys, stable float format") {
  Json j = Json::object();
  j.set("zeta", 1.0 / 3.0);
  j.set("alpha", 42L);
  j.set("mid", "text with \"quotes\"");
  Json arr = Json::array();
  arr.push(true);
  arr.push(Json());
  j.set("list", arr);

  const std::string a = j.dump();
  const std::string b = j.dump();
  CHECK(a == b);
  // keys appear sorted regardless of insertion order
  CHECK(a.find("\"alpha\"") < a.find("\"list\""));
  CHECK(a.find("\"list\"") < a.find("\"mid\""));
  CHECK(a.find("\"mid\"") < a.find("\"zeta\""));
  CHECK(a.find("0.33333333333333331") != std::string::npos);
  CHECK(a.find("\\\"quotes\\\"") != std::string::npos);
  CHECK(a.find("null") != std::string::npos);
}

TEST_CASE("result entries carry value, tolerance, provenance") {
  const Json e = result_entry(1.5, 1e-9, "analytic");
  const std::string s = e.dump(0);
  CHECK(s.find("\"provenance\":\"analytic\"") != std::string::npos);
  CHECK(s.find("\"tolerance\":" + format_double(1e-9)) != std::string::npos);
}

TEST_CASE("type misuse raises") {
  Json arr = Json::array();
  CHECK_THROWS_AS(arr.set("k", 1.0), std::logic_error);
  Json obj = Json::object();
  CHECK_THROWS_AS(obj.push(1.0), std::logic_error);
}

TEST_CASE("fast check suites pass under a fixed seed") {
  for (const char* suite : {"units", "phase", "vacua", "scattering"}) {
    const auto results = run_checks(suite, 42);
    CHECK(!results.empty());
    for (const auto& r : results) {
      INFO(r.group, ": ", r.name, " — ", r.detail);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(run_checks("bogus", 1), std::invalid_argument);
}
