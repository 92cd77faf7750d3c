#include "qlab/cli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlab/cli/symbol_parser.hpp"
#include "qlab/errors.hpp"
#include "qlab/liepoisson/bracket.hpp"
#include "qlab/liepoisson/chart.hpp"
#include "qlab/nctorus/algebra.hpp"
#include "qlab/numkit/finite_diff.hpp"
#include "qlab/parallel.hpp"
#include "qlab/poismap/sampling.hpp"
#include "qlab/poismap/tp_bracket.hpp"
#include "qlab/rng.hpp"
#include "qlab/weylrn/quantise.hpp"

namespace qlab::cli {

namespace {

namespace fs = std::filesystem;

using Row = std::vector<std::string>;

struct Report {
  std::vector<std::string> header;
  std::vector<Row> rows;
  bool pass = true;
  double max_error = 0.0;
  std::string failing;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file " + tmp.string());
    out << content;
  }
  fs::rename(tmp, p);
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.header.size(); ++i)
    out << r.header[i] << (i + 1 < r.header.size() ? "," : "");
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

// deterministic sweep: every slot is written by exactly one index, errors are
// collected instead of thrown across the parallel region
template <class Body>
std::string sweep(std::int64_t count, Body&& body) {
  std::vector<std::string> errors(static_cast<std::size_t>(count));
  parallel_for(count, [&](std::int64_t i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  });
  for (std::int64_t i = 0; i < count; ++i)
    if (!errors[static_cast<std::size_t>(i)].empty())
      return "sample " + std::to_string(i) + ": " + errors[static_cast<std::size_t>(i)];
  return {};
}

// ------------------------------------------------------------------ kinds --

Report run_nctorus_star(const ExperimentConfig& cfg) {
  const auto eta_vals = param_list(cfg, "eta");
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(eta_vals.size()))));
  const SkewForm eta(n, eta_vals);
  const TrigPoly a = parse_mode_list(param_string(cfg, "a"), n);
  const TrigPoly b = parse_mode_list(param_string(cfg, "b"), n);
  const double hbar = param_double(cfg, "hbar");
  const double tol = param_double_or(cfg, "tol", 1e-13);

  const TrigPoly result = nctorus::star(a, b, eta, hbar);
  const TrigPoly reference = nctorus::star_serial(a, b, eta, hbar);
  const double selfdist = TrigPoly::max_coeff_distance(result, reference);

  Report rep;
  for (int d = 1; d <= n; ++d) rep.header.push_back("m_" + std::to_string(d));
  rep.header.push_back("re");
  rep.header.push_back("im");
  for (const auto& [m, c] : result.modes()) {
    Row row;
    for (int v : m) row.push_back(std::to_string(v));
    row.push_back(fmt17(c.real()));
    row.push_back(fmt17(c.imag()));
    rep.rows.push_back(std::move(row));
  }
  rep.max_error = selfdist;
  rep.pass = selfdist <= tol;
  if (!rep.pass)
    rep.failing = "parallel and serial star products differ by " + fmt17(selfdist);
  return rep;
}

Report run_semiclassical(const ExperimentConfig& cfg) {
  const auto eta_vals = param_list(cfg, "eta");
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(eta_vals.size()))));
  const SkewForm eta(n, eta_vals);
  const auto hbars = param_list(cfg, "hbar_list");
  const auto trials = static_cast<std::size_t>(param_int(cfg, "trials"));
  const double slope_target = param_double_or(cfg, "slope_target", 2.0);
  const double slope_tol = param_double_or(cfg, "slope_tol", 0.05);

  // modes stay within +/-2 so hbar*<r,eta s> is deep in the asymptotic
  // regime over the usual hbar grids; the quadratic order is measurable there
  auto random_element = [&](Rng& rng) {
    TrigPoly p(n);
    const auto count = 1 + rng.uniform_int(0, 2);
    for (std::int64_t k = 0; k < count; ++k) {
      std::vector<int> r(static_cast<std::size_t>(n));
      for (int& v : r) v = static_cast<int>(rng.uniform_int(-2, 2));
      p.add_to(r, cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
    }
    return p;
  };

  std::vector<TrigPoly> as, bs;
  std::vector<double> weights;  // sum |a_r||b_s||<r,eta s>|^3
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_sample(cfg.seed, t);
    TrigPoly a(n), b(n);
    double w = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      a = random_element(rng);
      b = random_element(rng);
      w = 0.0;
      for (const auto& [r, ca] : a.modes())
        for (const auto& [s, cb] : b.modes()) {
          const double c = eta.pairing(r, s);
          w += std::abs(ca) * std::abs(cb) * std::fabs(c * c * c);
        }
      if (w > 1e-6) break;
    }
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
    weights.push_back(w);
  }

  const std::size_t H = hbars.size();
  std::vector<double> errors(trials * H, 0.0), bounds(trials * H, 0.0);
  const std::string sweep_error = sweep(static_cast<std::int64_t>(trials * H), [&](std::int64_t i) {
    const std::size_t t = static_cast<std::size_t>(i) / H;
    const std::size_t h = static_cast<std::size_t>(i) % H;
    errors[static_cast<std::size_t>(i)] = nctorus::semiclassical_error(as[t], bs[t], eta, hbars[h]);
    bounds[static_cast<std::size_t>(i)] = nctorus::semiclassical_bound(as[t], bs[t], eta, hbars[h]);
  });
  if (!sweep_error.empty()) throw EvaluationError(sweep_error);

  Report rep;
  rep.header = {"hbar", "max_error", "bound", "slope_running"};
  std::vector<double> max_err(H, 0.0), max_bound(H, 0.0);
  for (std::size_t h = 0; h < H; ++h)
    for (std::size_t t = 0; t < trials; ++t) {
      max_err[h] = std::max(max_err[h], errors[t * H + h]);
      max_bound[h] = std::max(max_bound[h], bounds[t * H + h]);
      if (errors[t * H + h] > bounds[t * H + h] * (1.0 + 1e-10) && rep.failing.empty()) {
        rep.pass = false;
        rep.failing = "pair " + std::to_string(t) + " at hbar=" + fmt17(hbars[h]) + ": error " +
                      fmt17(errors[t * H + h]) + " above bound " + fmt17(bounds[t * H + h]);
      }
    }
  for (std::size_t h = 0; h < H; ++h) {
    std::string slope;
    if (h > 0 && max_err[h] > 0.0 && max_err[h - 1] > 0.0)
      slope = fmt17(std::log(max_err[h] / max_err[h - 1]) / std::log(hbars[h] / hbars[h - 1]));
    rep.rows.push_back({fmt17(hbars[h]), fmt17(max_err[h]), fmt17(max_bound[h]), slope});
    rep.max_error = std::max(rep.max_error, max_err[h]);
  }
  if (H >= 2) {
    const double slope = numkit::fit_loglog_slope(hbars, max_err);
    if (std::fabs(slope - slope_target) > slope_tol) {
      rep.pass = false;
      if (rep.failing.empty())
        rep.failing = "fitted slope " + fmt17(slope) + " outside " + fmt17(slope_target) +
                      " +/- " + fmt17(slope_tol);
    }
  }
  return rep;
}

Report run_weyl(const ExperimentConfig& cfg) {
  const int n = static_cast<int>(param_int(cfg, "n"));
  const int N = static_cast<int>(param_int(cfg, "grid_size"));
  const numkit::PeriodicGrid grid(n, N);
  const auto hbars = param_list(cfg, "hbar_list");
  const auto f = parse_symbol(param_string(cfg, "symbol_f"), n);
  const auto g = parse_symbol(param_string(cfg, "symbol_g"), n);
  const std::string expect = has_param(cfg, "expect") ? param_string(cfg, "expect") : "exact";
  const double tol = param_double_or(cfg, "tol", 1e-10);
  const double slope_target = param_double_or(cfg, "slope_target", 1.0);
  const double slope_tol = param_double_or(cfg, "slope_tol", 0.1);

  // band-limited seeded test function
  Rng rng(cfg.seed);
  TrigPoly Hpoly(n);
  const int mmax = std::max(1, N / 8);
  while (Hpoly.support_size() < 5) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int& v : m) v = static_cast<int>(rng.uniform_int(-mmax, mmax));
    Hpoly.add_to(m, cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
  }
  std::vector<cplx> H(grid.total_nodes());
  for (std::size_t j = 0; j < H.size(); ++j)
    H[j] = Hpoly.eval(grid.node(j), kTwoPi / grid.period());

  std::vector<double> devs(hbars.size(), 0.0);
  for (std::size_t h = 0; h < hbars.size(); ++h)
    devs[h] = weylrn::commutator_check(f, g, hbars[h], H, grid);

  Report rep;
  rep.header = {"hbar", "deviation", "slope"};
  for (std::size_t h = 0; h < hbars.size(); ++h) {
    std::string slope;
    if (h > 0 && devs[h] > 0.0 && devs[h - 1] > 0.0)
      slope = fmt17(std::log(devs[h] / devs[h - 1]) / std::log(hbars[h] / hbars[h - 1]));
    rep.rows.push_back({fmt17(hbars[h]), fmt17(devs[h]), slope});
    rep.max_error = std::max(rep.max_error, devs[h]);
  }

  if (expect == "exact") {
    for (std::size_t h = 0; h < hbars.size(); ++h)
      if (devs[h] > tol) {
        rep.pass = false;
        rep.failing = "deviation " + fmt17(devs[h]) + " at hbar=" + fmt17(hbars[h]) +
                      " above tol " + fmt17(tol);
        break;
      }
  } else {
    if (hbars.size() < 2) throw InvalidArgument("weyl: expect=order1 needs >= 2 hbar values");
    const double slope = numkit::fit_loglog_slope(hbars, devs);
    if (std::fabs(slope - slope_target) > slope_tol) {
      rep.pass = false;
      rep.failing = "fitted slope " + fmt17(slope) + " outside " + fmt17(slope_target) + " +/- " +
                    fmt17(slope_tol);
    }
  }
  return rep;
}

Report run_sphere_ode(const ExperimentConfig& cfg) {
  const double a = param_double(cfg, "a");
  const double t0 = param_double(cfg, "t0");
  const double t1 = param_double(cfg, "t1");
  const double step = param_double(cfg, "step");
  const double alpha0 = param_double_or(cfg, "alpha0", a / t0 + 0.5 * t0);
  const double tol = param_double_or(cfg, "tol", 1e-8);

  const auto traj = poismap::solve_profile_ode(a, t0, alpha0, t1, step);

  Report rep;
  rep.header = {"t", "alpha", "closed_form", "deviation"};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double closed = a / t + 0.5 * t;
    const double dev = std::fabs(traj.values[i] - closed);
    rep.rows.push_back({fmt17(t), fmt17(traj.values[i]), fmt17(closed), fmt17(dev)});
    rep.max_error = std::max(rep.max_error, dev);
  }
  rep.pass = rep.max_error <= tol;
  if (!rep.pass)
    rep.failing = "max deviation " + fmt17(rep.max_error) + " above tol " + fmt17(tol);
  return rep;
}

Report run_poisson_residual(const ExperimentConfig& cfg) {
  const std::string geometry = param_string(cfg, "geometry");
  const auto samples = static_cast<std::size_t>(param_int(cfg, "samples"));
  const numkit::Tolerances fd_tol{};

  std::unique_ptr<poismap::PoissonGeometry> geom;
  poismap::CandidateMap pi;
  double umax = 0.0, tol = 0.0;
  if (geometry == "torus") {
    const auto eta_vals = param_list(cfg, "eta");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(eta_vals.size()))));
    geom = std::make_unique<poismap::FlatTorus>(SkewForm(n, eta_vals));
    pi = poismap::make_pi_torus();
    umax = param_double_or(cfg, "umax", 3.0);
    tol = param_double_or(cfg, "tol", 1e-8);
  } else {
    const std::string profile_name = param_string(cfg, "profile");
    poismap::RadialProfile profile = poismap::RadialProfile::arcsin_profile();
    if (profile_name == "half") profile = poismap::RadialProfile::half_profile();
    if (profile_name == "file")
      profile = poismap::RadialProfile::from_file(param_string(cfg, "profile_file"));
    geom = std::make_unique<poismap::RoundSphere>();
    pi = poismap::make_pi_sphere(std::move(profile));
    umax = param_double_or(cfg, "umax", 1.5);
    tol = param_double_or(cfg, "tol", 1e-6);
  }

  std::vector<double> unorm(samples, 0.0), residual(samples, 0.0);
  const std::string sweep_error = sweep(static_cast<std::int64_t>(samples), [&](std::int64_t i) {
    Rng rng = Rng::for_sample(cfg.seed, static_cast<std::uint64_t>(i));
    poismap::Point x;
    poismap::Tangent u;
    if (geometry == "torus") {
      const int n = geom->ambient_dim();
      x = poismap::random_torus_point(rng, n);
      u = poismap::random_torus_vector(rng, n, umax);
    } else {
      const Vec3 p = poismap::random_sphere_point(rng);
      x = poismap::from_vec3(p);
      u = poismap::from_vec3(poismap::random_tangent(rng, p, umax));
    }
    unorm[static_cast<std::size_t>(i)] = vnorm(u);
    residual[static_cast<std::size_t>(i)] =
        poismap::poisson_map_residual_battery(pi, x, u, *geom, fd_tol);
  });
  if (!sweep_error.empty()) throw EvaluationError(sweep_error);

  Report rep;
  rep.header = {"sample_id", "unorm", "residual"};
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    rep.rows.push_back({std::to_string(i), fmt17(unorm[i]), fmt17(residual[i])});
    rep.max_error = std::max(rep.max_error, residual[i]);
    sum += residual[i];
    if (residual[i] > tol && rep.failing.empty()) {
      rep.pass = false;
      rep.failing = "sample " + std::to_string(i) + ": residual " + fmt17(residual[i]) +
                    " above tol " + fmt17(tol);
    }
  }
  rep.rows.push_back({"max", "", fmt17(rep.max_error)});
  rep.rows.push_back({"mean", "", fmt17(sum / static_cast<double>(samples))});
  return rep;
}

Report run_jacobi_check(const ExperimentConfig& cfg) {
  const auto samples = static_cast<std::size_t>(param_int(cfg, "samples"));
  const double umax = param_double_or(cfg, "umax", 1.5);
  const double tol = param_double_or(cfg, "tol", 1e-7);
  const numkit::Tolerances fd_tol{};
  const poismap::RoundSphere sphere;

  std::vector<double> unorm(samples), d1e(samples), d2e(samples), jace(samples), deta(samples);
  const std::string sweep_error = sweep(static_cast<std::int64_t>(samples), [&](std::int64_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    Rng rng = Rng::for_sample(cfg.seed, i);
    const Vec3 p = poismap::random_sphere_point(rng);
    const Vec3 u = poismap::random_tangent(rng, p, umax);
    const poismap::SpherePoint sp(p);
    const poismap::SphereTangent v(sp, u);
    const Vec3 h = poismap::random_tangent(rng, p, 1.0);
    const Vec3 eps = poismap::random_tangent(rng, p, 1.0);
    const Vec3 hw = poismap::random_tangent(rng, p, 1.0);
    const Vec3 vw = poismap::random_tangent(rng, p, 1.0);

    unorm[i] = norm(u);
    d1e[i] = norm(poismap::d1_exp(v, h) - poismap::d1_exp_fd(v, h, fd_tol.fd_step));
    d2e[i] = norm(poismap::d2_exp(v, eps) - poismap::d2_exp_fd(v, eps, fd_tol.fd_step));
    jace[i] =
        norm(poismap::jacobi_dexp(v, hw, vw) - poismap::jacobi_dexp_fd(v, hw, vw, fd_tol.fd_step));
    deta[i] = poismap::max_abs(
        poismap::vertical_derivative_eta(poismap::from_vec3(p), poismap::from_vec3(u), sphere,
                                         fd_tol));
  });
  if (!sweep_error.empty()) throw EvaluationError(sweep_error);

  Report rep;
  rep.header = {"sample_id", "unorm", "d1_err", "d2_err", "jacobi_err", "deta_norm"};
  double m1 = 0, m2 = 0, mj = 0, md = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    rep.rows.push_back({std::to_string(i), fmt17(unorm[i]), fmt17(d1e[i]), fmt17(d2e[i]),
                        fmt17(jace[i]), fmt17(deta[i])});
    m1 = std::max(m1, d1e[i]);
    m2 = std::max(m2, d2e[i]);
    mj = std::max(mj, jace[i]);
    md = std::max(md, deta[i]);
    const double worst = std::max(std::max(d1e[i], d2e[i]), std::max(jace[i], deta[i]));
    if (worst > tol && rep.failing.empty()) {
      rep.pass = false;
      rep.failing =
          "sample " + std::to_string(i) + ": error " + fmt17(worst) + " above tol " + fmt17(tol);
    }
  }
  rep.rows.push_back({"max", "", fmt17(m1), fmt17(m2), fmt17(mj), fmt17(md)});
  rep.max_error = std::max(std::max(m1, m2), std::max(mj, md));
  return rep;
}

Report run_bracket_validate(const ExperimentConfig& cfg) {
  using liepoisson::AlgebroidChart;
  using liepoisson::DualFunction;
  using liepoisson::FiberPolynomial;
  using liepoisson::UPoly;

  AlgebroidChart chart = AlgebroidChart::so3();
  if (has_param(cfg, "chart_file")) {
    chart = AlgebroidChart::load_file(param_string(cfg, "chart_file"));
  } else {
    const std::string preset = param_string(cfg, "preset");
    if (preset == "so3")
      chart = AlgebroidChart::so3();
    else if (preset == "tangent2")
      chart = AlgebroidChart::tangent(2);
    else
      chart = AlgebroidChart::abelian(1, 2);
  }
  const auto trials = static_cast<std::size_t>(param_int(cfg, "trials"));
  const double tol = param_double_or(cfg, "tol", 1e-8);
  numkit::Tolerances fd_tol{};
  fd_tol.fd_step = param_double_or(cfg, "fd_step", 1e-2);

  auto random_poly = [&](Rng& rng) {
    FiberPolynomial f(chart.base_dim, chart.fiber_dim);
    const int terms = 2 + static_cast<int>(rng.uniform_int(0, 1));
    for (int t = 0; t < terms; ++t) {
      std::vector<int> alpha(static_cast<std::size_t>(chart.fiber_dim), 0);
      int degree = static_cast<int>(rng.uniform_int(0, 2));
      for (int d = 0; d < degree; ++d)
        alpha[static_cast<std::size_t>(rng.uniform_int(0, chart.fiber_dim - 1))] += 1;
      if (chart.base_dim > 0 && rng.uniform() < 0.5) {
        UPoly c = UPoly::constant(chart.base_dim, rng.uniform(-1.0, 1.0));
        c = c + UPoly::variable(chart.base_dim,
                                static_cast<int>(rng.uniform_int(0, chart.base_dim - 1))) *
                    rng.uniform(-1.0, 1.0);
        f.set_term(std::move(alpha), std::move(c));
      } else {
        f.set_term(std::move(alpha), rng.uniform(-1.0, 1.0));
      }
    }
    return f;
  };

  std::vector<double> antis(trials), leibniz(trials), jacobi(trials);
  const std::string sweep_error = sweep(static_cast<std::int64_t>(trials), [&](std::int64_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    Rng rng = Rng::for_sample(cfg.seed, i);
    VecD u(static_cast<std::size_t>(chart.base_dim));
    for (double& x : u) x = rng.uniform(-1.0, 1.0);
    VecD Z(static_cast<std::size_t>(chart.fiber_dim));
    for (double& x : Z) x = rng.uniform(-1.0, 1.0);
    const FiberPolynomial F = random_poly(rng);
    const FiberPolynomial G = random_poly(rng);
    const FiberPolynomial H = random_poly(rng);

    const double fg = liepoisson::lie_poisson_bracket(F, G, u, Z, chart, fd_tol);
    const double gf = liepoisson::lie_poisson_bracket(G, F, u, Z, chart, fd_tol);
    antis[i] = std::fabs(fg + gf);

    // Leibniz through the finite-difference path: wrap the polynomials as
    // opaque callables
    auto wrap = [](const FiberPolynomial& p) {
      return DualFunction([p](const VecD& uu, const VecD& ZZ) { return p.eval(uu, ZZ); });
    };
    const FiberPolynomial FG = liepoisson::fiber_multiply(F, G);
    const double lhs = liepoisson::lie_poisson_bracket(wrap(FG), wrap(H), u, Z, chart, fd_tol);
    const double rhs =
        F.eval(u, Z) * liepoisson::lie_poisson_bracket(wrap(G), wrap(H), u, Z, chart, fd_tol) +
        liepoisson::lie_poisson_bracket(wrap(F), wrap(H), u, Z, chart, fd_tol) * G.eval(u, Z);
    leibniz[i] = std::fabs(lhs - rhs);

    jacobi[i] = liepoisson::jacobi_residual(chart, F, G, H, u, Z, fd_tol);
  });
  if (!sweep_error.empty()) throw EvaluationError(sweep_error);

  Report rep;
  rep.header = {"trial", "antisymmetry", "leibniz", "jacobi"};
  double ma = 0, ml = 0, mjac = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    rep.rows.push_back({std::to_string(i), fmt17(antis[i]), fmt17(leibniz[i]), fmt17(jacobi[i])});
    ma = std::max(ma, antis[i]);
    ml = std::max(ml, leibniz[i]);
    mjac = std::max(mjac, jacobi[i]);
    const double worst = std::max(std::max(antis[i], leibniz[i]), jacobi[i]);
    if (worst > tol && rep.failing.empty()) {
      rep.pass = false;
      rep.failing = "trial " + std::to_string(i) + ": residual " + fmt17(worst) + " above tol " +
                    fmt17(tol);
    }
  }
  rep.rows.push_back({"max", fmt17(ma), fmt17(ml), fmt17(mjac)});
  rep.max_error = std::max(std::max(ma, ml), mjac);
  return rep;
}

}  // namespace

std::string format_float(double v) { return fmt17(v); }

RunResult run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.csv_path = cfg.output_path;
  {
    fs::path jp(cfg.output_path);
    jp.replace_extension(".json");
    result.json_path = jp.string();
  }

  Report rep;
  bool hard_failure = false;
  try {
    if (cfg.kind == "nctorus-star")
      rep = run_nctorus_star(cfg);
    else if (cfg.kind == "semiclassical")
      rep = run_semiclassical(cfg);
    else if (cfg.kind == "weyl")
      rep = run_weyl(cfg);
    else if (cfg.kind == "sphere-ode")
      rep = run_sphere_ode(cfg);
    else if (cfg.kind == "poisson-residual")
      rep = run_poisson_residual(cfg);
    else if (cfg.kind == "jacobi-check")
      rep = run_jacobi_check(cfg);
    else if (cfg.kind == "bracket-validate")
      rep = run_bracket_validate(cfg);
    else
      throw InvalidArgument("run_experiment: unknown kind " + cfg.kind);
  } catch (const std::exception& e) {
    hard_failure = true;
    rep.pass = false;
    rep.failing = e.what();
  }

  const auto end = std::chrono::steady_clock::now();
  result.runtime_ms = std::chrono::duration<double, std::milli>(end - start).count();
  result.pass = rep.pass && !hard_failure;
  result.exit_code = result.pass ? 0 : 1;
  result.max_error = rep.max_error;
  result.failing = rep.failing;

  if (!hard_failure) write_atomic(cfg.output_path, to_csv(rep));

  nlohmann::json summary = {
      {"name", cfg.name},
      {"pass", result.pass},
      {"max_error", result.max_error},
      {"runtime_ms", result.runtime_ms},
  };
  if (!result.failing.empty()) summary["failing"] = result.failing;
  write_atomic(result.json_path, summary.dump(2) + "\n");

  return result;
}

}  // namespace qlab::cli
