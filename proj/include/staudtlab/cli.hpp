#pragma once

// Command-line front end. Every verb produces a JSON report (CSV for the
// enumeration tables) and an exit code: 0 verified, 1 falsified, 2 usage or
// spec error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace staudt::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string> kVerbs{"ring-info", "eval",       "harmonic",    "crossratio",
                                             "components", "jordan-check", "jordan-enum", "classify",
                                             "preservers", "extend",     "synth-verify"};

struct Command {
  std::string verb;
  std::string spec;
  std::string map;
  std::string axioms;   // verb default when empty
  std::string expr;     // eval
  std::string triple;   // harmonic: three scalars, "inf" allowed
  std::string points;   // crossratio: four point literals
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::optional<double> budget;  // STAUDTLAB_BUDGET or 1e8 when absent
  std::string format = "json";
  std::string out;
  int dim = 2;                   // synth-verify
  std::size_t component = 0;     // extend
};

/// The flags that differ from their defaults, so the report replays.
Json to_json(const Command& cmd);

struct Report {
  Json body;
  int exit_code = 0;
  std::optional<std::string> csv;
};

/// Dispatches to the owning module. Library errors propagate.
Report run(const Command& cmd);

/// Exit code for a library error that escapes run(): 2 for usage and spec
/// problems, 1 for mathematical failures (reported with their witness).
int exit_code_for(const std::exception& e);

/// Full front end: parses argv, runs, and writes the report.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace staudt::cli
