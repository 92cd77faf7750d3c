#pragma once

#include <map>
#include <string>
#include <vector>

namespace qlab {

// Flat "key = value" text format. One pair per line, '#' starts a comment,
// arrays are bracketed comma lists: eta = [0, 1, -1, 0]. Line numbers are
// kept so that validation can point at the offending line.
struct KvEntry {
  std::string value;
  int line = 0;
};

struct KvDiagnostic {
  int line = 0;
  std::string message;
};

struct KvFile {
  std::map<std::string, KvEntry> entries;
  std::vector<KvDiagnostic> diagnostics;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
};

KvFile parse_kv_text(const std::string& text);
KvFile parse_kv_file(const std::string& path);

// Typed accessors; on failure they append a diagnostic and return false.
bool kv_as_double(const KvEntry& e, const std::string& key, double& out,
                  std::vector<KvDiagnostic>& diags);
bool kv_as_int(const KvEntry& e, const std::string& key, long long& out,
               std::vector<KvDiagnostic>& diags);
bool kv_as_uint64(const KvEntry& e, const std::string& key, unsigned long long& out,
                  std::vector<KvDiagnostic>& diags);
bool kv_as_double_list(const KvEntry& e, const std::string& key, std::vector<double>& out,
                       std::vector<KvDiagnostic>& diags);

}  // namespace qlab
