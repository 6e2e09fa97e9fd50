#pragma once
#include <string>

#include "fracbou/scan.hpp"
#include "fracbou/solver.hpp"

// Run configuration in a small INI dialect: [section] headers, key = value
// lines, ; or # comments.  Every key maps onto a field of SolverConfig,
// InitSpec, or OutputSpec; unknown sections and keys are rejected rather
// than ignored so typos surface immediately.  Command-line overrides reuse
// the same setter via "section.key=value".

namespace fracbou {

struct OutputSpec {
  std::string dir = "out";
  int cadence = 50;            // steps between diagnostic records
  std::string format = "csv";  // csv | json (summary verdicts)
  bool snapshots = false;      // write final omega/theta fields
};

struct RunConfig {
  SolverConfig solver;
  scan::InitSpec init;
  OutputSpec output;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// "section.key=value", same keys as the file
void apply_override(RunConfig& cfg, const std::string& assignment);

// canonical echo of every setting, parseable by parse_config_text
std::string render_config(const RunConfig& cfg);

}  // namespace fracbou
