#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qlab/cli/config.hpp"
#include "qlab/cli/experiments.hpp"
#include "qlab/parallel.hpp"

namespace {

using qlab::KvEntry;
using qlab::KvFile;

struct FlagSet {
  std::map<std::string, std::string> values;  // key -> raw value (kv syntax)

  void set(const std::string& key, std::string value) { values[key] = std::move(value); }
};

// Merge config-file entries (if any) with command-line flags; flags win.
KvFile assemble(const std::string& config_path, const std::string& kind, const FlagSet& flags) {
  KvFile raw;
  if (!config_path.empty()) raw = qlab::parse_kv_file(config_path);
  if (!kind.empty()) {
    if (raw.has("kind") && raw.entries["kind"].value != kind)
      raw.diagnostics.push_back({raw.entries["kind"].line,
                                 "config kind '" + raw.entries["kind"].value +
                                     "' does not match subcommand '" + kind + "'"});
    raw.entries["kind"] = KvEntry{kind, 0};
  }
  for (const auto& [key, value] : flags.values) raw.entries[key] = KvEntry{value, 0};
  return raw;
}

int run(const KvFile& raw) {
  std::vector<qlab::KvDiagnostic> diags;
  const auto cfg = qlab::cli::validate_config(raw, diags);
  if (!cfg) {
    std::cerr << "invalid config:\n" << qlab::cli::format_diagnostics(diags);
    return 2;
  }
  const auto result = qlab::cli::run_experiment(*cfg);
  if (result.pass) {
    std::cout << cfg->name << ": pass (max_error " << qlab::cli::format_float(result.max_error)
              << ", " << result.csv_path << ")\n";
  } else {
    std::cerr << cfg->name << ": FAIL";
    if (!result.failing.empty()) std::cerr << " - " << result.failing;
    std::cerr << "\n";
  }
  return result.exit_code;
}

// wraps a comma list in brackets for the kv layer
std::string listify(const std::string& s) { return "[" + s + "]"; }

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("QLAB_THREADS"))
    qlab::set_max_threads(std::atoi(threads));
  else
    qlab::set_max_threads(1);

  CLI::App app{"qlab - quantisation workbench: torus star products, phase-space operators, "
               "Lie-Poisson brackets, Poisson-map residuals"};
  app.require_subcommand(1);

  struct Common {
    std::string config, name, output, seed;
  };

  auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "key = value config file; flags override it");
    cmd->add_option("--name", c.name, "experiment name (default: kind)");
    cmd->add_option("-o,--output", c.output, "CSV output path (default: <name>.csv)");
    cmd->add_option("--seed", c.seed, "64-bit seed; required wherever sampling happens");
  };

  auto collect_common = [](const Common& c, FlagSet& f) {
    if (!c.name.empty()) f.set("name", c.name);
    if (!c.output.empty()) f.set("output", c.output);
    if (!c.seed.empty()) f.set("seed", c.seed);
  };

  int rc = 0;
  bool ran = false;

  // nctorus-star
  {
    auto* cmd = app.add_subcommand("nctorus-star",
                                   "deformed product of two torus elements; prints the result "
                                   "mode list and cross-checks the parallel kernel");
    auto c = std::make_shared<Common>();
    auto eta = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto hbar = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--eta", *eta, "skew matrix, row-major comma list: 0,1,-1,0");
    cmd->add_option("--a", *a, "mode list r1,r2:re,im;... for the left factor");
    cmd->add_option("--b", *b, "mode list for the right factor");
    cmd->add_option("--hbar", *hbar, "deformation parameter");
    cmd->add_option("--tol", *tol, "parallel/serial agreement tolerance (default 1e-13)");
    cmd->callback([&, c, eta, a, b, hbar, tol] {
      FlagSet f;
      collect_common(*c, f);
      if (!eta->empty()) f.set("eta", listify(*eta));
      if (!a->empty()) f.set("a", *a);
      if (!b->empty()) f.set("b", *b);
      if (!hbar->empty()) f.set("hbar", *hbar);
      if (!tol->empty()) f.set("tol", *tol);
      rc = run(assemble(c->config, "nctorus-star", f));
      ran = true;
    });
  }

  // semiclassical
  {
    auto* cmd = app.add_subcommand("semiclassical",
                                   "commutator-versus-bracket error of the deformed product over "
                                   "an hbar sweep; CSV: hbar, max_error, bound, slope_running");
    auto c = std::make_shared<Common>();
    auto eta = std::make_shared<std::string>();
    auto hbars = std::make_shared<std::string>();
    auto trials = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--eta", *eta, "skew matrix, row-major comma list");
    cmd->add_option("--hbar-list", *hbars, "comma list of positive hbar values");
    cmd->add_option("--trials", *trials, "number of random element pairs");
    cmd->callback([&, c, eta, hbars, trials] {
      FlagSet f;
      collect_common(*c, f);
      if (!eta->empty()) f.set("eta", listify(*eta));
      if (!hbars->empty()) f.set("hbar_list", listify(*hbars));
      if (!trials->empty()) f.set("trials", *trials);
      rc = run(assemble(c->config, "semiclassical", f));
      ran = true;
    });
  }

  // weyl
  {
    auto* cmd = app.add_subcommand("weyl",
                                   "phase-space operator commutator check on a periodic grid; "
                                   "CSV: hbar, deviation, slope");
    auto c = std::make_shared<Common>();
    auto n = std::make_shared<std::string>();
    auto gs = std::make_shared<std::string>();
    auto hbars = std::make_shared<std::string>();
    auto sf = std::make_shared<std::string>();
    auto sg = std::make_shared<std::string>();
    auto expect = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--n", *n, "dimension (1..3)");
    cmd->add_option("--grid-size", *gs, "nodes per axis, even, >= 4");
    cmd->add_option("--hbar-list", *hbars, "comma list of positive hbar values");
    cmd->add_option("--symbol-f", *sf, "symbol, e.g. 'X', 'X^2', 'cos(2p)*X'");
    cmd->add_option("--symbol-g", *sg, "symbol, e.g. 'sin(p)'");
    cmd->add_option("--expect", *expect, "'exact' (default) or 'order1'");
    cmd->add_option("--tol", *tol, "deviation tolerance for expect=exact (default 1e-10)");
    cmd->callback([&, c, n, gs, hbars, sf, sg, expect, tol] {
      FlagSet f;
      collect_common(*c, f);
      if (!n->empty()) f.set("n", *n);
      if (!gs->empty()) f.set("grid_size", *gs);
      if (!hbars->empty()) f.set("hbar_list", listify(*hbars));
      if (!sf->empty()) f.set("symbol_f", *sf);
      if (!sg->empty()) f.set("symbol_g", *sg);
      if (!expect->empty()) f.set("expect", *expect);
      if (!tol->empty()) f.set("tol", *tol);
      rc = run(assemble(c->config, "weyl", f));
      ran = true;
    });
  }

  // sphere-ode
  {
    auto* cmd = app.add_subcommand("sphere-ode",
                                   "radial-profile equation t*alpha' + alpha = t against the "
                                   "closed form a/t + t/2; CSV: t, alpha, closed_form, deviation");
    auto c = std::make_shared<Common>();
    auto a = std::make_shared<std::string>();
    auto t0 = std::make_shared<std::string>();
    auto t1 = std::make_shared<std::string>();
    auto step = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--a", *a, "branch constant of the closed form a/t + t/2");
    cmd->add_option("--t0", *t0, "start time, > 0");
    cmd->add_option("--t1", *t1, "end time, < 2");
    cmd->add_option("--step", *step, "RK4 step");
    cmd->add_option("--tol", *tol, "max deviation tolerance (default 1e-8)");
    cmd->callback([&, c, a, t0, t1, step, tol] {
      FlagSet f;
      collect_common(*c, f);
      if (!a->empty()) f.set("a", *a);
      if (!t0->empty()) f.set("t0", *t0);
      if (!t1->empty()) f.set("t1", *t1);
      if (!step->empty()) f.set("step", *step);
      if (!tol->empty()) f.set("tol", *tol);
      rc = run(assemble(c->config, "sphere-ode", f));
      ran = true;
    });
  }

  // poisson-residual
  {
    auto* cmd = app.add_subcommand("poisson-residual",
                                   "bracket residual of the candidate map TP -> P over seeded "
                                   "samples; CSV: sample_id, unorm, residual (+max/mean rows)");
    auto c = std::make_shared<Common>();
    auto geom = std::make_shared<std::string>();
    auto profile = std::make_shared<std::string>();
    auto pfile = std::make_shared<std::string>();
    auto samples = std::make_shared<std::string>();
    auto umax = std::make_shared<std::string>();
    auto eta = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--geometry", *geom, "'torus' or 'sphere'");
    cmd->add_option("--profile", *profile, "sphere radial profile: arcsin, half, file");
    cmd->add_option("--profile-file", *pfile, "table file for --profile file");
    cmd->add_option("--samples", *samples, "number of seeded samples");
    cmd->add_option("--umax", *umax,
                    "largest sampled ||u|| (default: torus 3.0, sphere 1.5); the sphere map "
                    "lives on ||u|| < 2 and its finite-difference residual degrades toward "
                    "that edge, so past ~1.7 loosen --tol accordingly");
    cmd->add_option("--eta", *eta, "torus skew matrix, row-major comma list");
    cmd->add_option("--tol", *tol, "residual tolerance (default: torus 1e-8, sphere 1e-6)");
    cmd->callback([&, c, geom, profile, pfile, samples, umax, eta, tol] {
      FlagSet f;
      collect_common(*c, f);
      if (!geom->empty()) f.set("geometry", *geom);
      if (!profile->empty()) f.set("profile", *profile);
      if (!pfile->empty()) f.set("profile_file", *pfile);
      if (!samples->empty()) f.set("samples", *samples);
      if (!umax->empty()) f.set("umax", *umax);
      if (!eta->empty()) f.set("eta", listify(*eta));
      if (!tol->empty()) f.set("tol", *tol);
      rc = run(assemble(c->config, "poisson-residual", f));
      ran = true;
    });
  }

  // jacobi-check
  {
    auto* cmd = app.add_subcommand("jacobi-check",
                                   "sphere differential oracles: closed forms against geodesic "
                                   "variations; CSV: sample_id, unorm, d1_err, d2_err, "
                                   "jacobi_err, deta_norm");
    auto c = std::make_shared<Common>();
    auto samples = std::make_shared<std::string>();
    auto umax = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--samples", *samples, "number of seeded samples");
    cmd->add_option("--umax", *umax, "largest sampled ||u|| (default 1.5)");
    cmd->add_option("--tol", *tol, "error tolerance (default 1e-7)");
    cmd->callback([&, c, samples, umax, tol] {
      FlagSet f;
      collect_common(*c, f);
      if (!samples->empty()) f.set("samples", *samples);
      if (!umax->empty()) f.set("umax", *umax);
      if (!tol->empty()) f.set("tol", *tol);
      rc = run(assemble(c->config, "jacobi-check", f));
      ran = true;
    });
  }

  // bracket-validate
  {
    auto* cmd = app.add_subcommand("bracket-validate",
                                   "antisymmetry / Leibniz / Jacobi residuals of a chart's "
                                   "Lie-Poisson bracket; CSV: trial, antisymmetry, leibniz, "
                                   "jacobi");
    auto c = std::make_shared<Common>();
    auto preset = std::make_shared<std::string>();
    auto chart = std::make_shared<std::string>();
    auto trials = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    auto fd = std::make_shared<std::string>();
    add_common(cmd, *c);
    cmd->add_option("--preset", *preset, "'so3', 'tangent2' or 'abelian'");
    cmd->add_option("--chart-file", *chart, "constant chart file (base_dim, fiber_dim, B, rho)");
    cmd->add_option("--trials", *trials, "number of seeded trials");
    cmd->add_option("--tol", *tol, "residual tolerance (default 1e-8)");
    cmd->add_option("--fd-step", *fd, "finite-difference step (default 1e-2)");
    cmd->callback([&, c, preset, chart, trials, tol, fd] {
      FlagSet f;
      collect_common(*c, f);
      if (!preset->empty()) f.set("preset", *preset);
      if (!chart->empty()) f.set("chart_file", *chart);
      if (!trials->empty()) f.set("trials", *trials);
      if (!tol->empty()) f.set("tol", *tol);
      if (!fd->empty()) f.set("fd_step", *fd);
      rc = run(assemble(c->config, "bracket-validate", f));
      ran = true;
    });
  }

  // run: kind comes from the file
  {
    auto* cmd = app.add_subcommand("run", "run an experiment described entirely by a config file");
    auto config = std::make_shared<std::string>();
    cmd->add_option("--config", *config, "key = value config file")->required();
    cmd->callback([&, config] {
      rc = run(assemble(*config, "", {}));
      ran = true;
    });
  }

  CLI11_PARSE(app, argc, argv);
  return ran ? rc : 0;
}
