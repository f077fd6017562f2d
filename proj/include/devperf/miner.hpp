#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "devperf/bins.hpp"
#include "devperf/bitmap.hpp"
#include "devperf/cv.hpp"
#include "devperf/dataset.hpp"
#include "devperf/outcome.hpp"
#include "devperf/stats.hpp"

namespace devperf {

struct Item {
  std::string predictor;
  std::string bin;

  bool operator==(const Item&) const = default;
};

struct MiningConfig {
  double minsup = 0.01;
  double alpha = 0.05;
  size_t max_len = 4;
  double pool_min_expected = 0.0;  // 0 disables pooling
  bool improvement = true;
};

struct DistributionRule {
  std::vector<Item> antecedent;  // canonical vocabulary order
  double support = 0.0;
  size_t subgroup_size = 0;
  ConfusionDistribution distribution;
  double p_value = 1.0;
  double chi2_stat = 0.0;
  int df = 0;
};

// Discretized dataset flattened to per-item row bitmaps plus the outcome
// column. Item order is predictor column order, then bin order.
struct MiningTable {
  std::vector<Item> items;
  std::vector<uint32_t> item_predictor;  // ordinal into predictors
  std::vector<Bitmap> item_rows;
  std::vector<std::string> predictors;
  std::vector<uint32_t> row_codes;
  CodeUniverse universe;
  ConfusionDistribution global;
  size_t n_rows = 0;
};

MiningTable build_mining_table(const Dataset& dataset, const PredictionSet& preds,
                               const std::vector<BinScheme>& schemes,
                               Diagnostics* diag = nullptr);

// Enumeration instrumentation for the pruning tests.
struct MiningStats {
  size_t support_evaluations = 0;
  size_t frequent_itemsets = 0;
  bool record_evaluated = false;
  std::vector<std::vector<uint32_t>> evaluated;  // item-id sets, when recording
};

// Levelwise mining; output sorted by p-value, then antecedent length, then
// lexical antecedent.
std::vector<DistributionRule> mine_rules(const MiningTable& table, const MiningConfig& config,
                                         MiningStats* stats = nullptr);

struct SubgroupResult {
  size_t size = 0;
  double support = 0.0;
  ConfusionDistribution distribution;
  double p_value = 1.0;
  double chi2_stat = 0.0;
  int df = 0;
  bool empty = false;
};

// Evaluates one antecedent regardless of minsup/alpha. Empty antecedent is
// the whole table.
SubgroupResult query_subgroup(const MiningTable& table, std::span<const Item> antecedent,
                              double pool_min_expected = 0.0);

// "Ant sup = 0.51775  pvalue = 0.00...\nCM={ 0/1.000 }  <--  a=x & b=y\n"
std::string format_rule(const DistributionRule& rule, const CodeUniverse& universe);
std::string format_rules(std::span<const DistributionRule> rules, const CodeUniverse& universe);
std::string rules_to_json(std::span<const DistributionRule> rules, const CodeUniverse& universe);

// "Bare.nuclei=1 & Normal.nucleoli=1" -> items; empty text -> empty set.
std::vector<Item> parse_antecedent(const std::string& text);

}  // namespace devperf
