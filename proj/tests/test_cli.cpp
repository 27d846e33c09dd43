#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "landau_berry/record.hpp"

using landau::Json;

namespace {

const std::string kDir = WORK_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& name, const std::string& config, const std::string& extra = "") {
  const std::string cfg = kDir + "/cli_" + name + ".json";
  const std::string out = kDir + "/cli_" + name + ".out";
  put(cfg, config);
  const std::string cmd = std::string("\"") + CLI_PATH + "\" --config \"" + cfg + "\" " + extra +
                          " > \"" + out + "\" 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(out)};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::stringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("identical runs give identical bytes") {
  const std::string cfg =
      R"({"scenario":"nonabelian-loop","basis":{"n_max":6,"m_max":2},"path":{"shape":"rectangle_x2_lnb","x2":[0,1],"lnb":[0,1]},"numerics":{"segments":1000}})";
  const Run a = run("det_a", cfg);
  const Run b = run("det_b", cfg);
  CHECK(a.status == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);
  // the record re-serialises to the same text
  const Json rec = Json::parse(a.out);
  CHECK(landau::write_json(rec) + "\n" == a.out);
  CHECK(rec.at("versions").at("config_hash") == landau::config_hash(Json::parse(cfg)));
}

TEST_CASE("exit codes") {
  const Run unknown = run("unknown",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":1.0},"bogus":1})");
  CHECK(unknown.status == 2);
  CHECK(Json::parse(unknown.out).at("error").at("category") == "schema");

  const Run guard = run("guard",
      R"({"scenario":"flux-ab","flux":{"Phi0":1,"Delta":2},"loop":{"R":3,"B":1e-7,"segments":100}})");
  CHECK(guard.status == 3);
  CHECK(Json::parse(guard.out).at("error").at("category") == "numerical_guard");

  const std::string cmd = std::string("\"") + CLI_PATH + "\" > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("radius sweep as CSV") {
  const Run r = run("sweep",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":1.0,"segments":10000},"sweep":{"axis":"path.radius","values":[0.25,0.5,1.0]}})",
      "--format csv");
  CHECK(r.status == 0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  CHECK(header == "value,gamma,abs_gamma,error_estimate");
  REQUIRE(rows.size() == 3);
  const double expect[] = {-0.3927, -1.5708, -6.2832};
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(rows[k][1] - expect[k]) < 1e-4);
    CHECK(rows[k][2] == std::abs(rows[k][1]));
  }

  const Run empty = run("empty",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":1.0},"sweep":{"axis":"path.radius","values":[]}})",
      "--format csv");
  CHECK(empty.status == 0);
  CHECK(empty.out == "value,gamma,abs_gamma,error_estimate\n");

  const Run bad_axis = run("badaxis",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":1.0},"sweep":{"axis":"path.nope","values":[1]}})",
      "--format csv");
  CHECK(bad_axis.status == 2);
}

TEST_CASE("field sweep of the flux loop") {
  const Run r = run("fluxB",
      R"({"scenario":"flux-ab","flux":{"Phi0":1,"Delta":2},"loop":{"R":3,"B":1,"segments":4096},"sweep":{"axis":"loop.B","values":[1,2,4]}})",
      "--format csv");
  CHECK(r.status == 0);
  std::string header;
  const auto rows = parse_csv(r.out, header);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[1][1] / rows[0][1] - 0.5) < 1e-10);
  CHECK(std::abs(rows[2][1] / rows[0][1] - 0.25) < 1e-10);
}

TEST_CASE("--out and output.path") {
  const std::string target = kDir + "/cli_written.json";
  std::remove(target.c_str());
  const Run r = run("outflag",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":0.5,"segments":400}})",
      "--out \"" + target + "\"");
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  const Json rec = Json::parse(slurp(target));
  CHECK(rec.at("scenario") == "abelian-loop");

  const std::string target2 = kDir + "/cli_cfgpath.json";
  std::remove(target2.c_str());
  const Run p = run("cfgpath",
      R"({"scenario":"abelian-loop","path":{"shape":"circle","radius":0.5,"segments":400},"output":{"path":")" +
          target2 + R"("}})");
  CHECK(p.status == 0);
  CHECK(Json::parse(slurp(target2)).at("results").contains("gamma"));
}
