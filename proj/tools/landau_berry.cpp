// Command-line front end: runs one scenario config and writes the record.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "landau_berry/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Berry phases of Landau-level coherent states"};
  std::string config_path;
  std::string out_path;
  std::string format;
  app.add_option("--config", config_path, "scenario config (JSON)")->required();
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read config '" << config_path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  const landau::ToolOutput result = landau::run_tool(buf.str(), format);
  if (result.exit_code != 0) std::cerr << result.text;

  // --out wins over output.path in the config.
  if (out_path.empty()) {
    try {
      const auto cfg = landau::Json::parse(buf.str());
      if (cfg.is_object() && cfg.contains("output") && cfg["output"].is_object() &&
          cfg["output"].contains("path") && cfg["output"]["path"].is_string()) {
        out_path = cfg["output"]["path"].get<std::string>();
      }
    } catch (const landau::Json::exception&) {
    }
  }
  if (out_path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 2;
    }
    out << result.text;
  }
  return result.exit_code;
}
