#pragma once

// Shared numeric machinery: sphere surface-area ratios via log-gamma, the
// regularized incomplete beta function, adaptive Simpson quadrature and a
// couple of small statistical helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace htester {

constexpr double kPi = 3.14159265358979323846;

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// S_{n-2}/S_{n-1} = Gamma(n/2) / (sqrt(pi) * Gamma((n-1)/2)), the constant in
// the 1-D projection density of the sphere in R^n.
inline double sphere_surface_ratio(int n) {
  return std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1))) /
         std::sqrt(kPi);
}

namespace detail {

// Continued fraction for the incomplete beta (Lentz's algorithm).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;  // converged to working precision in practice
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const double front = std::exp(lbeta + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::betacf(a, b, x) / a;
  }
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// Adaptive Simpson integration with an evaluation budget.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(double tol, std::uint64_t budget)
      : tol_(tol), budget_(budget) {}

  template <class F>
  double integrate(const F& f, double a, double b) {
    if (!(a < b)) return 0.0;
    const double fa = eval(f, a), fm = eval(f, 0.5 * (a + b)), fb = eval(f, b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(f, a, b, fa, fm, fb, whole, tol_, 60);
  }

  std::uint64_t evals() const { return evals_; }

 private:
  template <class F>
  double eval(const F& f, double x) {
    if (++evals_ > budget_) {
      throw QuadratureError("quadrature evaluation budget exceeded");
    }
    return f(x);
  }

  template <class F>
  double recurse(const F& f, double a, double b, double fa, double fm,
                 double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(f, lm), frm = eval(f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double tol_;
  std::uint64_t budget_;
  std::uint64_t evals_ = 0;
};

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12,
                 std::uint64_t budget = 2'000'000) {
  AdaptiveSimpson q(tol, budget);
  return q.integrate(f, a, b);
}

// Two-sided sub-Gaussian z value: Pr[|N(0,1)| > z] <= delta.
inline double z_two_sided(double delta) {
  return std::sqrt(2.0 * std::log(2.0 / delta));
}

// FNV-1a, used to digest diagnostic documents.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Two-sample Kolmogorov-Smirnov test: returns true when the samples pass at
// significance `alpha` (i.e. the KS distance is below the critical value).
inline bool ks_two_sample_pass(std::vector<double> a, std::vector<double> b,
                               double alpha) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(double(i) / na - double(j) / nb));
  }
  const double crit =
      std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt((na + nb) / (na * nb));
  return d < crit;
}

}  // namespace htester
