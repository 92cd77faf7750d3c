#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qlab/kv_file.hpp"

namespace qlab::cli {

// One experiment invocation: a recognised kind, an explicit seed, an output
// path, and the kind-specific parameters (validated, unknown keys rejected).
struct ExperimentConfig {
  std::string name;
  std::string kind;
  std::uint64_t seed = 0;
  std::string output_path;
  std::map<std::string, KvEntry> params;
};

const std::set<std::string>& known_kinds();

// Full validation of a raw key=value map: kind recognised, required keys
// present, values well-typed, physics parameters never defaulted. Tolerance
// keys alone have documented defaults. Diagnostics carry the source line
// (0 for values injected from command-line flags).
std::optional<ExperimentConfig> validate_config(const KvFile& raw,
                                                std::vector<KvDiagnostic>& diags);

std::string format_diagnostics(const std::vector<KvDiagnostic>& diags);

// Typed parameter access on a validated config (values are known to parse).
double param_double(const ExperimentConfig& cfg, const std::string& key);
long long param_int(const ExperimentConfig& cfg, const std::string& key);
std::vector<double> param_list(const ExperimentConfig& cfg, const std::string& key);
std::string param_string(const ExperimentConfig& cfg, const std::string& key);
bool has_param(const ExperimentConfig& cfg, const std::string& key);
double param_double_or(const ExperimentConfig& cfg, const std::string& key, double fallback);

}  // namespace qlab::cli
