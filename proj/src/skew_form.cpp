#include "qlab/skew_form.hpp"

#include <cmath>
#include <string>

namespace qlab {

namespace detail {

void symmetric_eigen(int n, std::vector<double> a, std::vector<double>& values,
                     std::vector<double>& vectors) {
  const std::size_t nn = static_cast<std::size_t>(n);
  vectors.assign(nn * nn, 0.0);
  for (int i = 0; i < n; ++i) vectors[static_cast<std::size_t>(i * n + i)] = 1.0;

  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
  auto V = [&](int i, int j) -> double& { return vectors[static_cast<std::size_t>(i * n + j)]; };

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(A(p, q)) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  values.resize(nn);
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = A(i, i);
}

}  // namespace detail

double SkewForm::max_asymmetry(int n, const std::vector<double>& a, int* bad_i, int* bad_j) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = std::fabs(a[static_cast<std::size_t>(i * n + j)] +
                                 a[static_cast<std::size_t>(j * n + i)]);
      if (v > worst) {
        worst = v;
        if (bad_i) *bad_i = i;
        if (bad_j) *bad_j = j;
      }
    }
  return worst;
}

SkewForm::SkewForm(int n, std::vector<double> row_major) : n_(n) {
  if (n < 1) throw InvalidArgument("SkewForm: dimension must be >= 1");
  if (row_major.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DimensionMismatch("SkewForm: expected " + std::to_string(n * n) + " entries");
  for (double v : row_major)
    if (!std::isfinite(v)) throw InvalidArgument("SkewForm: non-finite entry");
  int bi = 0, bj = 0;
  const double asym = max_asymmetry(n, row_major, &bi, &bj);
  if (asym > kMaxAsymmetry)
    throw InvalidArgument("SkewForm: not skew-symmetric, |A[" + std::to_string(bi) + "][" +
                          std::to_string(bj) + "] + A[" + std::to_string(bj) + "][" +
                          std::to_string(bi) + "]| = " + std::to_string(asym));
  a_.resize(row_major.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_[static_cast<std::size_t>(i * n + j)] =
          0.5 * (row_major[static_cast<std::size_t>(i * n + j)] -
                 row_major[static_cast<std::size_t>(j * n + i)]);
}

SkewForm SkewForm::zero(int n) {
  return SkewForm(n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0));
}

SkewForm SkewForm::standard_2d(double c) { return SkewForm(2, {0.0, c, -c, 0.0}); }

VecD SkewForm::apply(const VecD& v) const {
  if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("SkewForm::apply: bad size");
  VecD r(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(i)] += entry(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

VecD SkewForm::apply(const std::vector<int>& r) const {
  VecD v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = static_cast<double>(r[i]);
  return apply(v);
}

double SkewForm::pairing(const std::vector<int>& r, const std::vector<int>& s) const {
  VecD rv(r.size()), sv(s.size());
  for (std::size_t i = 0; i < r.size(); ++i) rv[i] = static_cast<double>(r[i]);
  for (std::size_t i = 0; i < s.size(); ++i) sv[i] = static_cast<double>(s[i]);
  return pairing(rv, sv);
}

double SkewForm::pairing(const VecD& r, const VecD& s) const { return vdot(r, apply(s)); }

bool SkewForm::is_zero() const {
  for (double v : a_)
    if (v != 0.0) return false;
  return true;
}

void SkewForm::ensure_projectors() const {
  if (projectors_ready_) return;
  // eta^T eta = -eta^2 is symmetric positive semidefinite; its null space is
  // the kernel of eta and the rest spans the image.
  std::vector<double> g(static_cast<std::size_t>(n_ * n_), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += entry(k, i) * entry(k, j);
      g[static_cast<std::size_t>(i * n_ + j)] = s;
    }
  std::vector<double> values, vectors;
  detail::symmetric_eigen(n_, g, values, vectors);
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::fabs(v));
  const double cutoff = kNullThreshold * std::max(scale, 1.0);
  image_basis_.clear();
  image_rank_ = 0;
  for (int c = 0; c < n_; ++c) {
    if (values[static_cast<std::size_t>(c)] > cutoff) {
      for (int i = 0; i < n_; ++i)
        image_basis_.push_back(vectors[static_cast<std::size_t>(i * n_ + c)]);
      ++image_rank_;
    }
  }
  projectors_ready_ = true;
}

VecD SkewForm::project_image(const VecD& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw DimensionMismatch("SkewForm::project_image: bad size");
  ensure_projectors();
  VecD out(static_cast<std::size_t>(n_), 0.0);
  for (int c = 0; c < image_rank_; ++c) {
    double coef = 0.0;
    for (int i = 0; i < n_; ++i)
      coef += image_basis_[static_cast<std::size_t>(c * n_ + i)] * v[static_cast<std::size_t>(i)];
    for (int i = 0; i < n_; ++i)
      out[static_cast<std::size_t>(i)] += coef * image_basis_[static_cast<std::size_t>(c * n_ + i)];
  }
  return out;
}

VecD SkewForm::project_kernel(const VecD& v) const { return vsub(v, project_image(v)); }

}  // namespace qlab
