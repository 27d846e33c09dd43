#pragma once

// Scenario runner behind the command-line tool. A config is one JSON
// document (schema in docs/config.md); run() dispatches it to the library
// and returns the result record, sweep() tabulates one scalar over a list
// of values of a numeric config leaf.

#include <string>
#include <string_view>

#include "landau_berry/record.hpp"

namespace landau {

/// Result record: scenario, inputs, results, diagnostics, versions.
/// Throws InvalidArgument on schema violations and NumericalGuard
/// subclasses from the modules.
Json run_scenario(const Json& config);

/// CSV with the fixed header `value,gamma,abs_gamma,error_estimate`, one
/// row per value in input order. Only scenarios with a scalar phase
/// (abelian-loop, flux-ab, adiabatic) can be swept.
std::string sweep_csv(const Json& config);

/// Exit status of the tool for a caught exception: 2 for schema and
/// argument errors, 3 for numerical guards, 1 otherwise.
int exit_code_for(const std::exception& error);

/// {"error": {"kind", "category", "message", "exit_code", ...}}.
Json error_record(const std::exception& error);

enum class OutputFormat { json, csv };

/// Full tool behaviour for an already parsed config: produces the text to
/// emit and the exit status; never throws.
struct ToolOutput {
  std::string text;
  int exit_code = 0;
};
ToolOutput run_tool(const std::string& config_text, std::string_view format_override);

}  // namespace landau
