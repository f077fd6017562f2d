#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "devperf/errors.hpp"
#include "devperf/report.hpp"

namespace {

void add_common(CLI::App* cmd, devperf::RunConfig& cfg) {
  cmd->set_config("--config", "", "read options from a config file");
  cmd->add_option("--data", cfg.data_path, "dataset CSV path");
  cmd->add_option("--target", cfg.target, "target column name");
  cmd->add_option("--seed", cfg.seed, "RNG seed for the CV shuffle")->envname("DEVPERF_SEED");
  cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--format", cfg.formats, "output formats")
      ->check(CLI::IsMember({"svg", "json", "csv", "txt"}))
      ->delimiter(',');
}

void add_learning(CLI::App* cmd, devperf::RunConfig& cfg) {
  cmd->add_option("--learner", cfg.learner, "built-in learner")
      ->check(CLI::IsMember(devperf::builtin_learner_names()))
      ->capture_default_str();
  cmd->add_option("--k", cfg.k, "cross-validation folds")->capture_default_str();
}

void add_import(CLI::App* cmd, devperf::RunConfig& cfg) {
  cmd->add_option("--predictions", cfg.predictions_path,
                  "import predictions CSV instead of running CV");
}

void add_bins(CLI::App* cmd, devperf::RunConfig& cfg) {
  cmd->add_option("--bins", cfg.bins_path, "JSON bin overrides (predictor -> boundaries)");
}

void add_mining(CLI::App* cmd, devperf::RunConfig& cfg) {
  cmd->add_option("--minsup", cfg.mining.minsup, "minimum antecedent support")
      ->capture_default_str();
  cmd->add_option("--alpha", cfg.mining.alpha, "significance level")->capture_default_str();
  cmd->add_option("--max-len", cfg.mining.max_len, "maximum antecedent length")
      ->capture_default_str();
  cmd->add_option("--pool-min-expected", cfg.mining.pool_min_expected,
                  "pool cells with expected count below this")
      ->capture_default_str();
  cmd->add_flag("--no-improvement", [&cfg](size_t) { cfg.mining.improvement = false; },
                "disable p-value improvement pruning");
  cmd->add_option("--query", cfg.query, "evaluate one antecedent, e.g. \"a=x & b=y\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"devperf: where does a classifier's error profile deviate from average"};
  app.require_subcommand(1);

  devperf::RunConfig cfg;
  int (*run)(const devperf::RunConfig&, std::ostream&) = nullptr;

  CLI::App* predict = app.add_subcommand("predict", "run k-fold CV and export predictions");
  add_common(predict, cfg);
  add_learning(predict, cfg);
  predict->callback([&] { run = devperf::cmd_predict; });

  CLI::App* edp = app.add_subcommand("edp", "error dependence plots per predictor");
  add_common(edp, cfg);
  add_learning(edp, cfg);
  add_import(edp, cfg);
  add_bins(edp, cfg);
  edp->add_option("--predictors", cfg.predictors, "predictors to plot, or 'all'")->delimiter(',');
  edp->callback([&] { run = devperf::cmd_edp; });

  CLI::App* rules = app.add_subcommand("rules", "mine distribution rules");
  add_common(rules, cfg);
  add_learning(rules, cfg);
  add_import(rules, cfg);
  add_bins(rules, cfg);
  add_mining(rules, cfg);
  rules->callback([&] { run = devperf::cmd_rules; });

  CLI::App* report = app.add_subcommand("report", "predictions + all EDPs + rules + manifest");
  add_common(report, cfg);
  add_learning(report, cfg);
  add_import(report, cfg);
  add_bins(report, cfg);
  add_mining(report, cfg);
  report->add_option("--predictors", cfg.predictors, "predictors to plot, or 'all'")
      ->delimiter(',');
  report->callback([&] { run = devperf::cmd_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    return run(cfg, std::cout);
  } catch (const devperf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const devperf::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
