#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "devperf/dataset.hpp"
#include "devperf/learner.hpp"
#include "devperf/outcome.hpp"

namespace devperf {

// Out-of-sample predictions for every dataset row. k == 0 marks an imported
// set; labels may then be a superset of the target's categories.
struct PredictionSet {
  std::vector<std::string> labels;
  std::vector<int32_t> true_codes;
  std::vector<int32_t> pred_codes;
  size_t k = 0;
  uint64_t seed = 0;
  std::string learner;

  size_t n() const { return true_codes.size(); }
  double accuracy() const;
};

// Permuted k-fold split: fold sizes differ by at most one and the folds
// cover 0..n-1 exactly once.
std::vector<std::vector<uint32_t>> kfold_partition(size_t n, size_t k, uint64_t seed);

PredictionSet cross_val_predict(const Dataset& dataset, const Learner& learner, size_t k,
                                uint64_t seed, Diagnostics* diag = nullptr);

// CSV with header "row_id,true,pred", one line per dataset row, any order but
// each row exactly once. True labels must match the dataset.
PredictionSet import_predictions(const std::string& path, const Dataset& dataset);
PredictionSet import_predictions_text(const std::string& text, const Dataset& dataset);

std::string export_predictions_csv(const PredictionSet& preds);

// Outcome code per row plus the code universe they index into.
struct OutcomeColumn {
  CodeUniverse universe;
  std::vector<uint32_t> ids;
};

OutcomeColumn encode_outcomes(const PredictionSet& preds);

}  // namespace devperf
