#pragma once

// RI-Tester: the end-to-end tester for unknown rotation-invariant
// distributions. Pipeline: find the pivot radius, stream one bulk draw into
// dyadic rings (the far region squashed onto a bounded shell first), run
// Simple-Tester on every ring with enough samples, check all pairs for
// consistency, check that large rings are nearly balanced, and reconcile the
// central ball with the rest through Check-Threshold.
//
// The tester touches the distribution only through the labeled-sample
// source. All subroutine simulations read deterministic prefixes of the
// recorded ring data, and every decision is a fixed function of the sample
// stream, so a run is reproducible bit for bit from the seed.

#include <cmath>
#include <string>
#include <vector>

#include "htester/check_consistency.hpp"
#include "htester/pivot.hpp"
#include "htester/rings.hpp"
#include "htester/simple_tester.hpp"
#include "htester/verdict.hpp"

namespace htester {

inline TesterVerdict ri_tester(SampleSource& src, int n, double eps,
                               double delta, const TesterConfig& cfg,
                               RngStream& rng) {
  cfg.validate();
  if (!(eps > 0.0 && eps < 0.5) || !(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("ri_tester: eps, delta in (0, 1/2)");
  }
  const auto b = budgets::ri_budgets(n, eps, delta, cfg);
  nlohmann::json diag;
  diag["k"] = b.k;
  diag["K"] = b.K;
  diag["m_req"] = b.m_req;
  diag["M"] = b.M;
  // Completeness of the far-region analysis assumes eps >= (4 c^2 n)^(-1/6).
  diag["eps_guard_ok"] =
      eps >= std::pow(4.0 * cfg.K2 * cfg.K2 * double(n), -1.0 / 6.0);

  // Pivot.
  const PivotResult pr = find_pivot(src, eps * eps, b.delta_sub, rng);
  diag["pivot"] = std::isinf(pr.pivot) ? -1.0 : pr.pivot;
  if (std::isinf(pr.pivot)) {
    // Monochromatic sample: f is eps^2-close to a constant, and constants
    // are threshold-limits of halfspaces.
    diag["monochromatic"] = true;
    return make_accept(src.drawn(), std::move(diag));
  }
  const double pivot = pr.pivot;
  const double outer_start =
      outer_start_radius(pivot, b.k, n, eps,
                         cfg.t_rule == TesterConfig::TRule::MaxRule);
  const double pi_radius = double(n) + 1.0;
  diag["outer_start"] = outer_start;

  // Bulk draw, streamed into the region stores.
  const std::vector<std::uint64_t> checkpoints{
      b.st.m_norm, 2 * b.st.m_norm, b.cc.m_cc, 2 * b.cc.m_cc};
  std::vector<RegionStore> region(std::size_t(b.k) + 2);
  for (int i = 1; i <= b.k + 1; ++i) {
    region[std::size_t(i)] = RegionStore(n, b.m_req, checkpoints);
  }
  RegionStore central(n, b.m_central, {});
  RegionStore tail(n, b.m_central, {});
  std::uint64_t gap_count = 0;

  Vec x, mapped;
  for (std::uint64_t s = 0; s < b.M; ++s) {
    const int label = src.draw(x, rng);
    const double r = norm(x);
    const int idx = ring_index(r, pivot, b.k, outer_start);
    if (idx != 0) tail.add(x, r, label);
    if (idx == 0) {
      central.add(x, r, label);
    } else if (idx == -1) {
      ++gap_count;
    } else if (idx <= b.k) {
      region[std::size_t(idx)].add(x, r, label);
    } else {
      const double factor = rescale_outer_radius(r, pi_radius) / r;
      mapped = x;
      scale(mapped, factor);
      region[std::size_t(b.k) + 1].add(mapped, factor * r, label);
    }
  }

  std::vector<int> active;
  nlohmann::json counts = nlohmann::json::object();
  for (int i = 1; i <= b.k + 1; ++i) {
    counts[std::to_string(i)] = region[std::size_t(i)].total();
    if (region[std::size_t(i)].total() >= b.m_req) active.push_back(i);
  }
  counts["central"] = central.total();
  counts["gap"] = gap_count;
  diag["region_counts"] = counts;
  diag["active"] = active;
  const std::uint64_t used = src.drawn();

  // Simple-Tester on every active ring (rescaled to R = sqrt(n)).
  nlohmann::json st_diag = nlohmann::json::object();
  for (int i : active) {
    const double R =
        i <= b.k ? std::ldexp(pivot, i) : 2.0 * pi_radius;
    const double lambda = std::sqrt(double(n)) / R;
    const SimpleTesterOutcome o =
        simple_tester_core(region[std::size_t(i)], lambda, eps, b.st);
    st_diag[std::to_string(i)] = o.to_json();
    if (!o.accept) {
      diag["simple_tester"] = st_diag;
      return make_reject("simple-tester-ring-" + std::to_string(i), used,
                         std::move(diag));
    }
  }
  diag["simple_tester"] = st_diag;

  // Pairwise consistency across active rings.
  nlohmann::json cc_diag = nlohmann::json::object();
  std::vector<GroupThreshold> group_data;
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t c = a + 1; c < active.size(); ++c) {
      const int i = active[a], j = active[c];
      const ConsistencyOutcome o = check_consistency_core(
          region[std::size_t(i)], region[std::size_t(j)], eps, b.cc, cfg);
      cc_diag[std::to_string(i) + "," + std::to_string(j)] = o.to_json();
      if (!o.accept) {
        diag["check_consistency"] = cc_diag;
        return make_reject("check-consistency-rings-" + std::to_string(i) +
                               "-" + std::to_string(j),
                           used, std::move(diag));
      }
      group_data.push_back({i, j, o.common_threshold});
    }
  }
  diag["check_consistency"] = cc_diag;

  // Large rings must be nearly balanced.
  const double balance_start =
      std::log2(std::sqrt(double(n)) / (std::sqrt(2.0 * kPi) * eps)) + 2.0;
  nlohmann::json bal_diag = nlohmann::json::object();
  for (int i : active) {
    if (double(i) < balance_start) continue;
    const double mean = region[std::size_t(i)].mean_label(b.m_bal);
    bal_diag[std::to_string(i)] = mean;
    if (std::fabs(mean) > eps) {
      diag["balance"] = bal_diag;
      return make_reject("balance-ring-" + std::to_string(i), used,
                         std::move(diag));
    }
  }
  diag["balance"] = bal_diag;

  // Central ball versus everything above the pivot.
  if (central.total() >= b.m_central && tail.stored() >= b.m_central &&
      !active.empty()) {
    const double v1 = central.mean_label(b.m_v0);
    const double v2 = tail.mean_label(b.m_v0);
    const ThresholdCheck ct = check_threshold_on(
        central.x1_prefix(b.m_ct0), tail.x1_prefix(b.m_ct0),
        0.5 * (v1 + 1.0), 0.5 * (v2 + 1.0), eps);
    diag["central_gate"] = {{"v1", v1},
                            {"v2", v2},
                            {"accept", ct.accept},
                            {"common", ct.common}};
    if (!ct.accept) {
      return make_reject("central-threshold", used, std::move(diag));
    }
  }

  // The recorded pairwise thresholds always admit a common point (their
  // per-ring intervals pairwise intersect by construction); an empty
  // intersection would mean the recording logic itself is broken.
  const GroupCheck gc = consistency_group(group_data);
  if (!gc.nonempty) {
    throw std::logic_error("ri_tester: consistency-group contract violated");
  }
  diag["group_common_threshold"] = gc.common;

  return make_accept(used, std::move(diag));
}

}  // namespace htester
