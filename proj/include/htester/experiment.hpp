#pragma once

// The experiment engine behind the CLI: a grid of (n, eps, delta) cells with
// a fixed number of trials per cell. Per-trial sub-seeds are derived as
// hash(master seed, cell index, trial index), so the report is a pure
// function of (config, seed); trials run on a work pool and the rows are
// emitted in deterministic (cell, trial) order regardless of completion
// order. Wall time is recorded only when timing is on - reruns meant to be
// byte-identical switch it off.

#include <atomic>
#include <chrono>
#include <mutex>
#include <cstdlib>
#include <thread>
#include <vector>

#include "htester/report.hpp"
#include "htester/ri_tester.hpp"
#include "htester/verify.hpp"

namespace htester {

struct ExperimentConfig {
  std::string scenario = "ri";  // ri | simple | verify | calibrate-noise
  std::vector<int> grid_n{10};
  std::vector<double> grid_eps{0.25};
  std::vector<double> grid_delta{0.2};
  int trials = 1;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: HTESTER_THREADS env or hardware
  bool timing = true;
  std::string out_path;
  ReportFormat format = ReportFormat::Csv;
  TesterConfig tester;
  KeyValues raw;  // distribution and oracle sub-specs

  static ExperimentConfig from_keyvalues(KeyValues kv) {
    ExperimentConfig cfg;
    cfg.scenario = kv.get("scenario", "ri");
    if (kv.has("grid.n")) cfg.grid_n = kv.get_ints("grid.n");
    if (kv.has("grid.eps")) cfg.grid_eps = kv.get_doubles("grid.eps");
    if (kv.has("grid.delta")) cfg.grid_delta = kv.get_doubles("grid.delta");
    cfg.trials = int(kv.get_u64("trials", 1));
    if (!kv.has("seed")) {
      throw ConfigError(kv.origin() +
                        ": 'seed' is required (no wall-clock seeding)");
    }
    cfg.seed = kv.get_u64("seed", 1);
    cfg.threads = int(kv.get_u64("threads", 0));
    cfg.timing = kv.get_bool("timing", true);
    cfg.out_path = kv.get("out", "");
    cfg.format = parse_format(kv.get("format", "csv"));
    cfg.tester.K1 = kv.get_double("constants.K1", cfg.tester.K1);
    cfg.tester.K2 = kv.get_double("constants.K2", cfg.tester.K2);
    cfg.tester.K3 = kv.get_double("constants.K3", cfg.tester.K3);
    cfg.tester.C = kv.get_double("constants.C", cfg.tester.C);
    cfg.tester.L = kv.get_double("constants.L", cfg.tester.L);
    cfg.tester.eta = kv.get_double("constants.eta", cfg.tester.eta);
    cfg.tester.cc_gate_scale =
        kv.get_double("constants.cc_gate_scale", cfg.tester.cc_gate_scale);
    cfg.tester.cc_gate_delta =
        kv.get_double("constants.cc_gate_delta", cfg.tester.cc_gate_delta);
    cfg.tester.z_ratio = kv.get_double("constants.z_ratio", cfg.tester.z_ratio);
    cfg.tester.ring_count_override =
        int(kv.get_u64("constants.k_override", 0));
    const std::string t_rule = kv.get("constants.t_rule", "max");
    cfg.tester.t_rule = t_rule == "ring" ? TesterConfig::TRule::RingRule
                                         : TesterConfig::TRule::MaxRule;
    cfg.raw = std::move(kv);
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (trials < 1) throw ConfigError("trials >= 1 required");
    if (grid_n.empty() || grid_eps.empty() || grid_delta.empty()) {
      throw ConfigError("grids must be nonempty");
    }
    if (scenario != "ri" && scenario != "simple" && scenario != "verify" &&
        scenario != "calibrate-noise") {
      throw ConfigError("unknown scenario '" + scenario + "'");
    }
    try {
      tester.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("constants: ") + e.what());
    }
  }

  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("HTESTER_THREADS")) {
      const int t = std::atoi(env);
      if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
  }
};

namespace detail {

struct Cell {
  int n = 0;
  double eps = 0.0, delta = 0.0;
  std::size_t index = 0;
};

inline std::vector<Cell> cells_of(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  std::size_t idx = 0;
  for (int n : cfg.grid_n) {
    for (double e : cfg.grid_eps) {
      for (double d : cfg.grid_delta) {
        cells.push_back({n, e, d, idx++});
      }
    }
  }
  return cells;
}

inline ReportRow run_tester_trial(const ExperimentConfig& cfg, const Cell& cell,
                                  int trial) {
  const std::uint64_t trial_seed = hash_u64(cfg.seed, cell.index,
                                            std::uint64_t(trial));
  const RIDistribution dist = parse_distribution(cfg.raw, cell.n);
  const FunctionOracle oracle = parse_oracle(cfg.raw, dist, trial_seed);

  ReportRow row;
  row.scenario = cfg.scenario;
  row.n = cell.n;
  row.eps = cell.eps;
  row.delta = cell.delta;
  row.trial = trial;
  row.seed = trial_seed;

  const auto t0 = std::chrono::steady_clock::now();
  TesterVerdict verdict;
  if (cfg.scenario == "simple") {
    RngStream rng = RngStream::derive(trial_seed, 1);
    verdict = simple_tester(dist, oracle, cell.eps, cell.delta, cfg.tester, rng);
  } else {
    OracleSampleSource src(dist, oracle);
    RngStream rng = RngStream::derive(trial_seed, 1);
    verdict = ri_tester(src, cell.n, cell.eps, cell.delta, cfg.tester, rng);
  }
  if (cfg.timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  }
  row.verdict = verdict.accept ? "accept" : "reject";
  row.samples_used = verdict.samples_used;
  row.diag_digest = digest_hex(verdict.digest());
  return row;
}

// Noise/margin measurements behind the calibration of the gate constants:
// the empirical spread of the Simple-Tester statistics on an exact halfspace
// against the accept gate, per grid cell.
inline ReportRow run_calibration_trial(const ExperimentConfig& cfg,
                                       const Cell& cell, int trial) {
  const std::uint64_t trial_seed = hash_u64(cfg.seed, cell.index,
                                            std::uint64_t(trial));
  const RIDistribution dist = parse_distribution(cfg.raw, cell.n);
  const FunctionOracle oracle = parse_oracle(cfg.raw, dist, trial_seed);
  const auto b = budgets::simple_tester_budgets(cell.n, cell.eps, cell.delta,
                                                bounded_params(dist).C,
                                                cfg.tester);
  RngStream rng = RngStream::derive(trial_seed, 2);
  RegionStore store(dist.dim, b.total, {b.m_norm, 2 * b.m_norm});
  Vec x;
  for (std::uint64_t i = 0; i < b.total; ++i) {
    sample_ri(dist, rng, x);
    store.add(x, norm(x), oracle(x));
  }
  const double lambda = std::sqrt(double(dist.dim)) / bounded_params(dist).R;
  const SimpleTesterOutcome o = simple_tester_core(store, lambda, cell.eps, b);

  ReportRow row;
  row.scenario = cfg.scenario;
  row.n = cell.n;
  row.eps = cell.eps;
  row.delta = cell.delta;
  row.trial = trial;
  row.seed = trial_seed;
  row.verdict = o.accept ? "accept" : "reject";
  row.samples_used = b.total;
  nlohmann::json diag = o.to_json();
  diag["gap"] = o.p2 - o.c2;
  diag["gate_margin"] = b.eps3_cubed - (o.p2 - o.c2);
  row.diag_digest = digest_hex(fnv1a64(diag.dump()));
  return row;
}

}  // namespace detail

inline std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  if (cfg.scenario == "verify") {
    std::vector<ReportRow> rows;
    int idx = 0;
    for (const auto& rec : run_verification(cfg.seed)) {
      ReportRow row;
      row.scenario = "verify:" + rec.name;
      row.trial = idx++;
      row.seed = cfg.seed;
      row.verdict = rec.pass ? "pass" : "fail";
      row.diag_digest = digest_hex(fnv1a64(rec.details.dump()));
      rows.push_back(std::move(row));
    }
    return rows;
  }

  const auto cells = detail::cells_of(cfg);
  const std::size_t total = cells.size() * std::size_t(cfg.trials);
  std::vector<ReportRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total || failed.load()) break;
      const detail::Cell& cell = cells[i / std::size_t(cfg.trials)];
      const int trial = int(i % std::size_t(cfg.trials));
      try {
        rows[i] = cfg.scenario == "calibrate-noise"
                      ? detail::run_calibration_trial(cfg, cell, trial)
                      : detail::run_tester_trial(cfg, cell, trial);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  const int nthreads = std::min<int>(cfg.resolved_threads(), int(total));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw ConfigError("experiment failed: " + error_message);
  return rows;
}

}  // namespace htester
