#include "qlab/kv_file.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end != s.c_str() && *end == '\0';
}

}  // namespace

KvFile parse_kv_text(const std::string& text) {
  KvFile f;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      f.diagnostics.push_back({lineno, "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      f.diagnostics.push_back({lineno, "empty key"});
      continue;
    }
    if (f.entries.count(key)) {
      f.diagnostics.push_back({lineno, "duplicate key: " + key});
      continue;
    }
    f.entries[key] = KvEntry{value, lineno};
  }
  return f;
}

KvFile parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    KvFile f;
    f.diagnostics.push_back({0, "cannot open file: " + path});
    return f;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

bool kv_as_double(const KvEntry& e, const std::string& key, double& out,
                  std::vector<KvDiagnostic>& diags) {
  if (!parse_double(e.value, out)) {
    diags.push_back({e.line, "key '" + key + "': expected a number, got '" + e.value + "'"});
    return false;
  }
  return true;
}

bool kv_as_int(const KvEntry& e, const std::string& key, long long& out,
               std::vector<KvDiagnostic>& diags) {
  errno = 0;
  char* end = nullptr;
  out = std::strtoll(e.value.c_str(), &end, 10);
  if (errno != 0 || end == e.value.c_str() || *end != '\0') {
    diags.push_back({e.line, "key '" + key + "': expected an integer, got '" + e.value + "'"});
    return false;
  }
  return true;
}

bool kv_as_uint64(const KvEntry& e, const std::string& key, unsigned long long& out,
                  std::vector<KvDiagnostic>& diags) {
  errno = 0;
  char* end = nullptr;
  out = std::strtoull(e.value.c_str(), &end, 10);
  if (errno != 0 || end == e.value.c_str() || *end != '\0' || e.value.find('-') != std::string::npos) {
    diags.push_back(
        {e.line, "key '" + key + "': expected a non-negative integer, got '" + e.value + "'"});
    return false;
  }
  return true;
}

bool kv_as_double_list(const KvEntry& e, const std::string& key, std::vector<double>& out,
                       std::vector<KvDiagnostic>& diags) {
  std::string s = trim(e.value);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    diags.push_back({e.line, "key '" + key + "': expected a bracketed list like [1, 2]"});
    return false;
  }
  s = s.substr(1, s.size() - 2);
  out.clear();
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) {
      diags.push_back({e.line, "key '" + key + "': empty list element"});
      return false;
    }
    double v = 0.0;
    if (!parse_double(t, v)) {
      diags.push_back({e.line, "key '" + key + "': bad list element '" + t + "'"});
      return false;
    }
    out.push_back(v);
  }
  return true;
}

}  // namespace qlab
