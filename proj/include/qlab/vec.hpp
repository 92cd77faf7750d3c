#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace qlab {

using cplx = std::complex<double>;
using VecD = std::vector<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  const double r = norm(a);
  return {a.x / r, a.y / r, a.z / r};
}

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}
inline bool is_finite(const VecD& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline VecD vadd(const VecD& a, const VecD& b) {
  VecD r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecD vsub(const VecD& a, const VecD& b) {
  VecD r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecD vscale(double s, const VecD& a) {
  VecD r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline double vdot(const VecD& a, const VecD& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double vnorm(const VecD& a) { return std::sqrt(vdot(a, a)); }

// representative in [0, 2*pi)
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

inline VecD wrap_torus(VecD q) {
  for (double& x : q) x = wrap_angle(x);
  return q;
}

// distance on the circle of circumference 2*pi
inline double circle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace qlab
