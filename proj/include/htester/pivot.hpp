#pragma once

// Find-Pivot: the smallest radius below which the function looks constant on
// a sample. Returns +inf when the sample is monochromatic.

#include <algorithm>
#include <cmath>
#include <vector>

#include "htester/budgets.hpp"
#include "htester/samples.hpp"

namespace htester {

// min{ ||x|| : x, y in X, ||y|| <= ||x||, f(x) != f(y) } over recorded
// (radius, label) pairs; +inf if monochromatic.
inline double find_pivot_on(std::vector<std::pair<double, int>> norm_label) {
  if (norm_label.empty()) return kInf;
  std::sort(norm_label.begin(), norm_label.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const int first = norm_label.front().second;
  for (std::size_t i = 1; i < norm_label.size(); ++i) {
    if (norm_label[i].second != first) return norm_label[i].first;
  }
  return kInf;
}

struct PivotResult {
  double pivot = kInf;  // +inf: monochromatic sample
  std::uint64_t samples_used = 0;
  int majority_label = 1;
};

// Draws ceil((1/eps) ln(2/delta)) labeled samples.
inline PivotResult find_pivot(SampleSource& src, double eps, double delta,
                              RngStream& rng) {
  const std::uint64_t m = budgets::find_pivot_samples(eps, delta);
  std::vector<std::pair<double, int>> nl;
  nl.reserve(m);
  Vec x;
  long sum = 0;
  for (std::uint64_t i = 0; i < m; ++i) {
    const int label = src.draw(x, rng);
    sum += label;
    nl.emplace_back(norm(x), label);
  }
  PivotResult out;
  out.samples_used = m;
  out.majority_label = sum >= 0 ? 1 : -1;
  out.pivot = find_pivot_on(std::move(nl));
  return out;
}

}  // namespace htester
