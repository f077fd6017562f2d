#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "devperf/miner.hpp"

namespace devperf {

struct RunConfig {
  std::string data_path;
  std::string target;
  std::string learner = "nb";
  size_t k = 10;
  uint64_t seed = 1;
  std::string predictions_path;         // non-empty switches to import mode
  std::vector<std::string> predictors;  // empty or {"all"} means every predictor
  std::string bins_path;
  MiningConfig mining;
  std::string query;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"svg", "json", "csv", "txt"};

  bool import_mode() const { return !predictions_path.empty(); }
  bool wants(const std::string& fmt) const;
};

// Commands throw ConfigError / DataError; the binary maps them to exit codes.
int cmd_predict(const RunConfig& cfg, std::ostream& out);
int cmd_edp(const RunConfig& cfg, std::ostream& out);
int cmd_rules(const RunConfig& cfg, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

}  // namespace devperf
