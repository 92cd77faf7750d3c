#include "qlab/liepoisson/chart.hpp"

#include <cmath>
#include <string>

#include "qlab/kv_file.hpp"

namespace qlab::liepoisson {

namespace {

void check_tensor(const std::vector<double>& t, std::size_t expected, const char* what) {
  if (t.size() != expected)
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(expected) +
                            " entries, got " + std::to_string(t.size()));
  for (double v : t)
    if (!std::isfinite(v)) throw EvaluationError(std::string(what) + ": non-finite entry");
}

}  // namespace

std::vector<double> AlgebroidChart::B_at(const VecD& u) const {
  if (static_cast<int>(u.size()) != base_dim)
    throw DimensionMismatch("AlgebroidChart: base point has wrong dimension");
  auto t = constant ? B_const : B(u);
  const std::size_t n = static_cast<std::size_t>(fiber_dim);
  check_tensor(t, n * n * n, "AlgebroidChart::B");
  return t;
}

std::vector<double> AlgebroidChart::rho_at(const VecD& u) const {
  if (static_cast<int>(u.size()) != base_dim)
    throw DimensionMismatch("AlgebroidChart: base point has wrong dimension");
  auto t = constant ? rho_const : rho(u);
  check_tensor(t, static_cast<std::size_t>(base_dim) * static_cast<std::size_t>(fiber_dim),
               "AlgebroidChart::rho");
  return t;
}

AlgebroidChart AlgebroidChart::make_constant(int base_dim, int fiber_dim, std::vector<double> Bv,
                                             std::vector<double> rhov) {
  if (base_dim < 0 || fiber_dim < 1)
    throw InvalidArgument("AlgebroidChart: need base_dim >= 0 and fiber_dim >= 1");
  const std::size_t n = static_cast<std::size_t>(fiber_dim);
  check_tensor(Bv, n * n * n, "AlgebroidChart::B");
  check_tensor(rhov, static_cast<std::size_t>(base_dim) * n, "AlgebroidChart::rho");
  AlgebroidChart c;
  c.base_dim = base_dim;
  c.fiber_dim = fiber_dim;
  c.constant = true;
  c.B_const = std::move(Bv);
  c.rho_const = std::move(rhov);
  c.B = [B = c.B_const](const VecD&) { return B; };
  c.rho = [r = c.rho_const](const VecD&) { return r; };
  return c;
}

AlgebroidChart AlgebroidChart::abelian(int base_dim, int fiber_dim) {
  const std::size_t n = static_cast<std::size_t>(fiber_dim);
  return make_constant(base_dim, fiber_dim, std::vector<double>(n * n * n, 0.0),
                       std::vector<double>(static_cast<std::size_t>(base_dim) * n, 0.0));
}

AlgebroidChart AlgebroidChart::so3() {
  std::vector<double> B(27, 0.0);
  B[b_index(3, 2, 0, 1)] = 1.0;  // B^3_{12}
  B[b_index(3, 0, 1, 2)] = 1.0;  // B^1_{23}
  B[b_index(3, 1, 2, 0)] = 1.0;  // B^2_{31}
  return make_constant(0, 3, std::move(B), {});
}

AlgebroidChart AlgebroidChart::so3_jacobi_breaking(double eps) {
  std::vector<double> B(27, 0.0);
  B[b_index(3, 2, 0, 1)] = 1.0;
  B[b_index(3, 0, 1, 2)] = 1.0;
  B[b_index(3, 1, 2, 0)] = 1.0;
  B[b_index(3, 0, 0, 1)] = eps;  // B^1_{12}: {Z1,Z2} picks up -eps*Z1
  return make_constant(0, 3, std::move(B), {});
}

AlgebroidChart AlgebroidChart::tangent(int n) {
  if (n < 1) throw InvalidArgument("AlgebroidChart::tangent: n must be >= 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> rho(nn * nn, 0.0);
  for (int k = 0; k < n; ++k) rho[rho_index(n, k, k)] = 1.0;
  return make_constant(n, n, std::vector<double>(nn * nn * nn, 0.0), std::move(rho));
}

AlgebroidChart AlgebroidChart::load_file(const std::string& path) {
  KvFile f = parse_kv_file(path);
  auto fail = [&](int line, const std::string& msg) -> void {
    throw InvalidArgument("chart file " + path + ":" + std::to_string(line) + ": " + msg);
  };
  if (!f.diagnostics.empty()) fail(f.diagnostics[0].line, f.diagnostics[0].message);

  for (const char* key : {"base_dim", "fiber_dim", "B", "rho"})
    if (!f.has(key)) fail(0, std::string("missing key: ") + key);
  for (const auto& [key, entry] : f.entries)
    if (key != "base_dim" && key != "fiber_dim" && key != "B" && key != "rho")
      fail(entry.line, "unknown key: " + key);

  std::vector<KvDiagnostic> diags;
  long long m = 0, n = 0;
  std::vector<double> Bv, rhov;
  if (!kv_as_int(f.entries["base_dim"], "base_dim", m, diags) ||
      !kv_as_int(f.entries["fiber_dim"], "fiber_dim", n, diags) ||
      !kv_as_double_list(f.entries["B"], "B", Bv, diags) ||
      !kv_as_double_list(f.entries["rho"], "rho", rhov, diags))
    fail(diags[0].line, diags[0].message);
  if (m < 0) fail(f.entries["base_dim"].line, "base_dim must be >= 0");
  if (n < 1) fail(f.entries["fiber_dim"].line, "fiber_dim must be >= 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  if (Bv.size() != nn * nn * nn)
    fail(f.entries["B"].line, "B must have fiber_dim^3 = " + std::to_string(nn * nn * nn) +
                                  " entries, got " + std::to_string(Bv.size()));
  if (rhov.size() != static_cast<std::size_t>(m) * nn)
    fail(f.entries["rho"].line,
         "rho must have base_dim*fiber_dim = " + std::to_string(static_cast<std::size_t>(m) * nn) +
             " entries, got " + std::to_string(rhov.size()));
  return make_constant(static_cast<int>(m), static_cast<int>(n), std::move(Bv), std::move(rhov));
}

}  // namespace qlab::liepoisson
