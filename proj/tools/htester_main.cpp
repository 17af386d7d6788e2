// htester: run halfspace-testing experiments over rotation-invariant
// distributions.
//
//   htester test    --config cfg.txt [--seed S] ...   one run per grid cell
//   htester sweep   --config cfg.txt ...              grid experiment
//   htester verify  [--seed S] ...                    theorem checks
//   htester calibrate --config cfg.txt ...            gate-noise sweep
//
// Exit codes: 0 completed, 1 usage/config error, 2 verification failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "htester/htester.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config file (key = value)");
  cmd->add_option("--out", o.out_path, "output report path");
  cmd->add_option("--format", o.format, "csv or json-lines");
  cmd->add_option("--seed", o.seed, "master seed")->each([&o](std::string) {
    o.seed_set = true;
  });
  cmd->add_option("--threads", o.threads,
                  "worker threads (default: HTESTER_THREADS or hardware)");
  cmd->add_option("--override", o.overrides,
                  "KEY=VALUE config override (repeatable)")
      ->take_all();
}

htester::ExperimentConfig load_config(const CommonOpts& o,
                                      const std::string& scenario_default) {
  htester::KeyValues kv =
      o.config_path.empty()
          ? htester::KeyValues::parse_text("", "<cli>")
          : htester::KeyValues::parse_file(o.config_path);
  if (!kv.has("scenario")) kv.set("scenario", scenario_default);
  for (const std::string& ov : o.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw htester::ConfigError("--override expects KEY=VALUE, got '" + ov +
                                 "'");
    }
    kv.set(htester::KeyValues::trim(ov.substr(0, eq)),
           htester::KeyValues::trim(ov.substr(eq + 1)));
  }
  if (o.seed_set) kv.set("seed", std::to_string(o.seed));
  if (!o.format.empty()) kv.set("format", o.format);
  if (!o.out_path.empty()) kv.set("out", o.out_path);
  if (o.threads >= 0) kv.set("threads", std::to_string(o.threads));
  return htester::ExperimentConfig::from_keyvalues(std::move(kv));
}

int emit(const htester::ExperimentConfig& cfg,
         const std::vector<htester::ReportRow>& rows) {
  const std::string text = htester::emit_report(rows, cfg.format);
  if (cfg.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    htester::write_report(rows, cfg.format, cfg.out_path);
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(),
                 cfg.out_path.c_str());
  }
  return 0;
}

void warn_eps_guard(const htester::ExperimentConfig& cfg) {
  if (cfg.scenario != "ri") return;
  for (int n : cfg.grid_n) {
    for (double eps : cfg.grid_eps) {
      const double floor =
          std::pow(4.0 * cfg.tester.K2 * cfg.tester.K2 * double(n), -1.0 / 6.0);
      if (eps < floor) {
        std::fprintf(stderr,
                     "warning: eps = %g below the outer-ring guard %.3g at "
                     "n = %d; far-region tolerance is heuristic there\n",
                     eps, floor, n);
      }
    }
  }
}

int run_experiment_command(const CommonOpts& o, const std::string& scenario,
                           bool force_single_trial) {
  htester::ExperimentConfig cfg = load_config(o, scenario);
  if (force_single_trial) cfg.trials = 1;
  warn_eps_guard(cfg);
  const auto rows = htester::run_experiment(cfg);
  return emit(cfg, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"halfspace testing over rotation-invariant distributions"};
  app.require_subcommand(1);

  CommonOpts test_opts, sweep_opts, verify_opts, cal_opts;
  CLI::App* test = app.add_subcommand("test", "single run per grid cell");
  add_common(test, test_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "grid experiment");
  add_common(sweep, sweep_opts);
  CLI::App* verify = app.add_subcommand("verify", "run the theorem checks");
  add_common(verify, verify_opts);
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "constant-calibration sweep");
  add_common(calibrate, cal_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (test->parsed()) return run_experiment_command(test_opts, "ri", true);
    if (sweep->parsed()) return run_experiment_command(sweep_opts, "ri", false);
    if (calibrate->parsed()) {
      return run_experiment_command(cal_opts, "calibrate-noise", false);
    }
    if (verify->parsed()) {
      htester::KeyValues kv = htester::KeyValues::parse_text("", "<cli>");
      kv.set("scenario", "verify");
      kv.set("seed", verify_opts.seed_set ? std::to_string(verify_opts.seed)
                                          : "2024");
      if (!verify_opts.format.empty()) kv.set("format", verify_opts.format);
      if (!verify_opts.out_path.empty()) kv.set("out", verify_opts.out_path);
      const auto cfg = htester::ExperimentConfig::from_keyvalues(std::move(kv));
      const auto rows = htester::run_experiment(cfg);
      emit(cfg, rows);
      for (const auto& r : rows) {
        if (r.verdict != "pass") {
          std::fprintf(stderr, "verification failure: %s\n",
                       r.scenario.c_str());
          return 2;
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
