#include "qlab/cli/config.hpp"

#include <cmath>
#include <sstream>

#include "qlab/cli/symbol_parser.hpp"
#include "qlab/errors.hpp"
#include "qlab/liepoisson/chart.hpp"
#include "qlab/skew_form.hpp"

namespace qlab::cli {

namespace {

struct KindSchema {
  std::vector<std::string> required;
  std::vector<std::string> optional;
  bool needs_seed = false;
};

const std::map<std::string, KindSchema>& schemas() {
  static const std::map<std::string, KindSchema> table = {
      {"nctorus-star", {{"eta", "a", "b", "hbar"}, {"tol"}, false}},
      {"semiclassical", {{"eta", "hbar_list", "trials"}, {"slope_target", "slope_tol"}, true}},
      {"weyl",
       {{"n", "grid_size", "hbar_list", "symbol_f", "symbol_g"},
        {"expect", "tol", "slope_target", "slope_tol"},
        true}},
      {"sphere-ode", {{"a", "t0", "t1", "step"}, {"alpha0", "tol"}, false}},
      {"poisson-residual",
       {{"geometry", "samples"}, {"eta", "profile", "profile_file", "umax", "tol"}, true}},
      {"jacobi-check", {{"samples"}, {"umax", "tol"}, true}},
      {"bracket-validate", {{"trials"}, {"preset", "chart_file", "tol", "fd_step"}, true}},
  };
  return table;
}

bool contains(const std::vector<std::string>& v, const std::string& k) {
  for (const auto& x : v)
    if (x == k) return true;
  return false;
}

// eta must be a square skew matrix; returns its dimension or -1
int check_eta(const KvEntry& e, std::vector<KvDiagnostic>& diags) {
  std::vector<double> vals;
  if (!kv_as_double_list(e, "eta", vals, diags)) return -1;
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
  if (n < 1 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != vals.size()) {
    diags.push_back({e.line, "key 'eta': expected n*n entries, got " +
                                 std::to_string(vals.size())});
    return -1;
  }
  int bi = 0, bj = 0;
  const double asym = SkewForm::max_asymmetry(n, vals, &bi, &bj);
  if (asym > SkewForm::kMaxAsymmetry) {
    std::ostringstream msg;
    msg << "key 'eta': not skew-symmetric, |eta[" << bi << "][" << bj << "] + eta[" << bj << "]["
        << bi << "]| = " << asym;
    diags.push_back({e.line, msg.str()});
    return -1;
  }
  return n;
}

bool check_positive_list(const KvEntry& e, const std::string& key,
                         std::vector<KvDiagnostic>& diags) {
  std::vector<double> vals;
  if (!kv_as_double_list(e, key, vals, diags)) return false;
  if (vals.empty()) {
    diags.push_back({e.line, "key '" + key + "': list must not be empty"});
    return false;
  }
  for (double v : vals)
    if (!(v > 0.0)) {
      diags.push_back({e.line, "key '" + key + "': entries must be positive"});
      return false;
    }
  return true;
}

bool check_count(const KvEntry& e, const std::string& key, std::vector<KvDiagnostic>& diags) {
  long long v = 0;
  if (!kv_as_int(e, key, v, diags)) return false;
  if (v < 1) {
    diags.push_back({e.line, "key '" + key + "': must be >= 1"});
    return false;
  }
  return true;
}

}  // namespace

const std::set<std::string>& known_kinds() {
  static const std::set<std::string> kinds = [] {
    std::set<std::string> k;
    for (const auto& [name, schema] : schemas()) k.insert(name);
    return k;
  }();
  return kinds;
}

std::optional<ExperimentConfig> validate_config(const KvFile& raw,
                                                std::vector<KvDiagnostic>& diags) {
  diags.insert(diags.end(), raw.diagnostics.begin(), raw.diagnostics.end());
  if (!diags.empty()) return std::nullopt;

  auto it = raw.entries.find("kind");
  if (it == raw.entries.end()) {
    diags.push_back({0, "missing key: kind"});
    return std::nullopt;
  }
  const std::string kind = it->second.value;
  auto schema_it = schemas().find(kind);
  if (schema_it == schemas().end()) {
    diags.push_back({it->second.line, "unknown kind: " + kind});
    return std::nullopt;
  }
  const KindSchema& schema = schema_it->second;

  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.name = raw.has("name") ? raw.entries.at("name").value : kind;
  cfg.output_path = raw.has("output") ? raw.entries.at("output").value : cfg.name + ".csv";

  if (raw.has("seed")) {
    unsigned long long s = 0;
    if (kv_as_uint64(raw.entries.at("seed"), "seed", s, diags)) cfg.seed = s;
  } else if (schema.needs_seed) {
    diags.push_back({0, "missing key: seed"});
  }

  for (const auto& key : schema.required)
    if (!raw.has(key)) diags.push_back({0, "missing key: " + key});

  for (const auto& [key, entry] : raw.entries) {
    if (key == "kind" || key == "name" || key == "output" || key == "seed") continue;
    if (!contains(schema.required, key) && !contains(schema.optional, key)) {
      diags.push_back({entry.line, "unknown key: " + key});
      continue;
    }
    cfg.params[key] = entry;
  }
  if (!diags.empty()) return std::nullopt;

  // per-kind semantic checks
  auto get = [&](const std::string& key) -> const KvEntry& { return raw.entries.at(key); };

  if (kind == "nctorus-star") {
    const int n = check_eta(get("eta"), diags);
    double hb = 0.0;
    kv_as_double(get("hbar"), "hbar", hb, diags);
    if (n > 0) {
      for (const char* key : {"a", "b"}) {
        try {
          parse_mode_list(get(key).value, n);
        } catch (const Error& err) {
          diags.push_back({get(key).line, std::string("key '") + key + "': " + err.what()});
        }
      }
    }
  } else if (kind == "semiclassical") {
    check_eta(get("eta"), diags);
    check_positive_list(get("hbar_list"), "hbar_list", diags);
    check_count(get("trials"), "trials", diags);
  } else if (kind == "weyl") {
    long long n = 0;
    if (kv_as_int(get("n"), "n", n, diags) && (n < 1 || n > 3))
      diags.push_back({get("n").line, "key 'n': must be 1, 2 or 3"});
    long long gs = 0;
    if (kv_as_int(get("grid_size"), "grid_size", gs, diags) && (gs < 4 || gs % 2 != 0))
      diags.push_back({get("grid_size").line, "key 'grid_size': must be even and >= 4"});
    check_positive_list(get("hbar_list"), "hbar_list", diags);
    if (n >= 1 && n <= 3) {
      for (const char* key : {"symbol_f", "symbol_g"}) {
        try {
          parse_symbol(get(key).value, static_cast<int>(n));
        } catch (const Error& err) {
          diags.push_back({get(key).line, std::string("key '") + key + "': " + err.what()});
        }
      }
    }
    if (raw.has("expect")) {
      const std::string e = get("expect").value;
      if (e != "exact" && e != "order1")
        diags.push_back({get("expect").line, "key 'expect': must be 'exact' or 'order1'"});
    }
  } else if (kind == "sphere-ode") {
    double a = 0, t0 = 0, t1 = 0, step = 0;
    kv_as_double(get("a"), "a", a, diags);
    // evaluate all three so every malformed key gets its own diagnostic
    const bool ok0 = kv_as_double(get("t0"), "t0", t0, diags);
    const bool ok1 = kv_as_double(get("t1"), "t1", t1, diags);
    const bool ok2 = kv_as_double(get("step"), "step", step, diags);
    if (ok0 && ok1 && ok2) {
      if (!(t0 > 0.0 && t1 > t0 && t1 < 2.0))
        diags.push_back({get("t0").line, "need 0 < t0 < t1 < 2"});
      if (!(step > 0.0)) diags.push_back({get("step").line, "key 'step': must be positive"});
    }
  } else if (kind == "poisson-residual") {
    const std::string geom = get("geometry").value;
    if (geom != "torus" && geom != "sphere") {
      diags.push_back({get("geometry").line, "key 'geometry': must be 'torus' or 'sphere'"});
    } else if (geom == "torus") {
      if (!raw.has("eta"))
        diags.push_back({0, "missing key: eta (required for geometry = torus)"});
      else
        check_eta(get("eta"), diags);
      if (raw.has("profile"))
        diags.push_back({get("profile").line, "key 'profile' applies only to the sphere"});
    } else {
      if (!raw.has("profile"))
        diags.push_back({0, "missing key: profile (required for geometry = sphere)"});
      else {
        const std::string p = get("profile").value;
        if (p != "arcsin" && p != "half" && p != "file")
          diags.push_back({get("profile").line,
                           "key 'profile': must be 'arcsin', 'half' or 'file'"});
        if (p == "file" && !raw.has("profile_file"))
          diags.push_back({0, "missing key: profile_file (required for profile = file)"});
      }
      if (raw.has("eta"))
        diags.push_back({get("eta").line, "key 'eta' applies only to the torus"});
      if (raw.has("umax")) {
        double um = 0.0;
        if (kv_as_double(get("umax"), "umax", um, diags) && !(um > 0.0 && um <= 1.9))
          diags.push_back({get("umax").line, "key 'umax': sphere sampling needs 0 < umax <= 1.9"});
      }
    }
    check_count(get("samples"), "samples", diags);
  } else if (kind == "jacobi-check") {
    check_count(get("samples"), "samples", diags);
    if (raw.has("umax")) {
      double um = 0.0;
      if (kv_as_double(get("umax"), "umax", um, diags) && !(um > 0.0 && um <= 3.0))
        diags.push_back({get("umax").line, "key 'umax': need 0 < umax <= 3.0"});
    }
  } else if (kind == "bracket-validate") {
    check_count(get("trials"), "trials", diags);
    if (raw.has("fd_step")) {
      double h = 0.0;
      if (kv_as_double(get("fd_step"), "fd_step", h, diags) && !(h > 0.0 && h <= 0.1))
        diags.push_back({get("fd_step").line, "key 'fd_step': need 0 < fd_step <= 0.1"});
    }
    const bool has_preset = raw.has("preset");
    const bool has_file = raw.has("chart_file");
    if (has_preset == has_file) {
      diags.push_back({0, "exactly one of 'preset' and 'chart_file' is required"});
    } else if (has_preset) {
      const std::string p = get("preset").value;
      if (p != "so3" && p != "tangent2" && p != "abelian")
        diags.push_back({get("preset").line,
                         "key 'preset': must be 'so3', 'tangent2' or 'abelian'"});
    } else {
      try {
        liepoisson::AlgebroidChart::load_file(get("chart_file").value);
      } catch (const Error& err) {
        diags.push_back({get("chart_file").line, err.what()});
      }
    }
  }

  if (!diags.empty()) return std::nullopt;
  return cfg;
}

std::string format_diagnostics(const std::vector<KvDiagnostic>& diags) {
  std::ostringstream out;
  for (const auto& d : diags) {
    if (d.line > 0)
      out << "line " << d.line << ": " << d.message << "\n";
    else
      out << d.message << "\n";
  }
  return out.str();
}

double param_double(const ExperimentConfig& cfg, const std::string& key) {
  std::vector<KvDiagnostic> diags;
  double v = 0.0;
  if (!kv_as_double(cfg.params.at(key), key, v, diags))
    throw InvalidArgument("param_double: " + diags[0].message);
  return v;
}

long long param_int(const ExperimentConfig& cfg, const std::string& key) {
  std::vector<KvDiagnostic> diags;
  long long v = 0;
  if (!kv_as_int(cfg.params.at(key), key, v, diags))
    throw InvalidArgument("param_int: " + diags[0].message);
  return v;
}

std::vector<double> param_list(const ExperimentConfig& cfg, const std::string& key) {
  std::vector<KvDiagnostic> diags;
  std::vector<double> v;
  if (!kv_as_double_list(cfg.params.at(key), key, v, diags))
    throw InvalidArgument("param_list: " + diags[0].message);
  return v;
}

std::string param_string(const ExperimentConfig& cfg, const std::string& key) {
  return cfg.params.at(key).value;
}

bool has_param(const ExperimentConfig& cfg, const std::string& key) {
  return cfg.params.count(key) != 0;
}

double param_double_or(const ExperimentConfig& cfg, const std::string& key, double fallback) {
  return has_param(cfg, key) ? param_double(cfg, key) : fallback;
}

}  // namespace qlab::cli
