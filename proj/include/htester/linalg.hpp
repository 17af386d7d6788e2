#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace htester {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline void scale(Vec& a, double c) {
  for (auto& x : a) x *= c;
}

// a += c * b
inline void axpy(Vec& a, double c, std::span<const double> b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline Vec axis_vector(int dim, int axis) {
  assert(axis >= 0 && axis < dim);
  Vec v(static_cast<std::size_t>(dim), 0.0);
  v[static_cast<std::size_t>(axis)] = 1.0;
  return v;
}

// Returns a unit vector; zero input is left to the caller to exclude.
inline Vec normalized(Vec v) {
  const double n = norm(v);
  assert(n > 0.0);
  scale(v, 1.0 / n);
  return v;
}

inline double angle_between(std::span<const double> u, std::span<const double> v) {
  double c = dot(u, v) / (norm(u) * norm(v));
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

inline int sign_pm1(double x) { return x >= 0.0 ? 1 : -1; }  // sign(0) := +1

}  // namespace htester
