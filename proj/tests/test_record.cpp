#include <doctest.h>

#include <cmath>

#include "landau_berry/errors.hpp"
#include "landau_berry/record.hpp"
#include "landau_berry/scenario.hpp"

using namespace landau;

namespace {

// FNV-1a, 64-bit, spelled out from its published constants.
unsigned long long fnv_reference(const std::string& s) {
  unsigned long long h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

TEST_CASE("deterministic JSON text") {
  const Json j = {{"b", 0.1}, {"a", {1, 2.5, -3e-20}}, {"c", "x"}, {"d", nullptr}, {"e", 2.0}};
  const std::string text = write_json(j);
  CHECK(text == R"({"a":[1,2.5,-3.0000000000000003e-20],"b":0.10000000000000001,"c":"x","d":null,"e":2.0})");
  CHECK(write_json(Json::parse(text)) == text);
  CHECK(Json::parse(text) == j);
  CHECK(write_json(Json(std::nan(""))) == "null");
}

TEST_CASE("matrix round-trip") {
  CMatrix m(2, 3);
  m << Complex(1, -2), 0.1, Complex(0, 1.0 / 3.0), -4.0, Complex(1e-300, 5), 6.0;
  const Json j = matrix_to_json(m);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("re")[2] == 0.0);
  CHECK(j.at("im")[2] == 1.0 / 3.0);
  CHECK(matrix_from_json(Json::parse(write_json(j))) == m);
  Json broken = j;
  broken["re"].erase(0);
  CHECK_THROWS_AS(matrix_from_json(broken), InvalidArgument);
}

TEST_CASE("config hash") {
  for (std::string s : {"", "a", "foobar", "{\"scenario\":\"abelian-loop\"}"}) {
    CHECK(fnv1a64(s) == fnv_reference(s));
  }
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  const Json a = Json::parse(R"({"x":1,"y":[2,3]})");
  const Json b = Json::parse(R"({ "y": [2, 3], "x": 1 })");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(Json::parse(R"({"x":2,"y":[2,3]})")));
}

TEST_CASE("scenario records are reproducible") {
  const Json cfg = Json::parse(
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":0.5,"segments":2000}})");
  const Json r1 = run_scenario(cfg);
  const Json r2 = run_scenario(cfg);
  CHECK(write_json(r1) == write_json(r2));
  CHECK(r1.at("scenario") == "abelian-loop");
  CHECK(r1.at("versions").at("config_hash") == config_hash(cfg));
  const double g = r1.at("results").at("gamma").get<double>();
  CHECK(std::abs(g + 2 * 0.5 * 2000 * std::sin(2 * M_PI / 2000) * 0.25) < 1e-12);
}

TEST_CASE("tool output and error records") {
  const ToolOutput bad = run_tool(R"({"scenario":"abelian-loop","oops":1})", "");
  CHECK(bad.exit_code == 2);
  CHECK(Json::parse(bad.text).at("error").at("kind") == "InvalidArgument");
  CHECK(run_tool("not json", "").exit_code == 2);
  CHECK(run_tool(R"({"scenario":"nope"})", "").exit_code == 2);
  const ToolOutput guard = run_tool(
      R"({"scenario":"flux-ab","flux":{"Phi0":1,"Delta":2},"loop":{"R":3,"B":1e-7,"segments":100}})",
      "");
  CHECK(guard.exit_code == 3);
  CHECK(Json::parse(guard.text).at("error").at("kind") == "FieldGuard");
  CHECK(run_tool(R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":1}})", "csv")
            .exit_code == 2);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
  CHECK(exit_code_for(TruncationRisk("x", 40)) == 3);
  CHECK(error_record(TruncationRisk("x", 40)).at("error").at("required_n_max") == 40);
}
