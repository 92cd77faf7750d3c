#pragma once

#include <string>

#include "qlab/cli/config.hpp"

namespace qlab::cli {

struct RunResult {
  bool pass = false;
  int exit_code = 1;  // 0 = pass, 1 = criteria unmet or numerical failure
  double max_error = 0.0;
  std::string failing;  // first failing sample, when any
  std::string csv_path;
  std::string json_path;
  double runtime_ms = 0.0;
};

// Runs a validated experiment: computes every row first, then writes the CSV
// report through a write-then-rename so no partial report ever lands, and a
// JSON summary {name, pass, max_error, runtime_ms} with the same stem. Hard
// numerical failures produce no CSV at all; the failing sample goes into the
// summary and the result.
RunResult run_experiment(const ExperimentConfig& cfg);

// floats in reports carry 17 significant digits
std::string format_float(double v);

}  // namespace qlab::cli
