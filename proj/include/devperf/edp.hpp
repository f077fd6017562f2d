#pragma once

#include <optional>
#include <string>
#include <vector>

#include "devperf/bins.hpp"
#include "devperf/cv.hpp"
#include "devperf/dataset.hpp"
#include "devperf/outcome.hpp"

namespace devperf {

// Error dependence plot data: the global confusion distribution next to the
// same distribution conditioned on each bin of one predictor.
struct EDPResult {
  std::string predictor;
  BinScheme scheme;
  CodeUniverse universe;
  ConfusionDistribution global;              // every row
  std::vector<ConfusionDistribution> per_bin;  // aligned to scheme.bins
  std::vector<uint32_t> row_codes;           // outcome code id per row
  std::vector<int32_t> row_bins;             // bin index per row, -1 when missing
  size_t n_rows = 0;
  size_t n_missing = 0;
};

EDPResult compute_edp(const Dataset& dataset, const PredictionSet& preds,
                      const std::string& predictor,
                      const std::optional<BinScheme>& scheme = std::nullopt,
                      Diagnostics* diag = nullptr);

// Misses only. Shares are fractions of the errors that fall in some bin;
// errors on rows with the predictor missing are reported separately.
struct ErrorZoom {
  CodeUniverse miss_universe;
  ConfusionDistribution global;              // miss codes over all rows
  std::vector<ConfusionDistribution> per_bin;
  std::vector<double> bin_share;             // sums to 1 when binned_errors > 0
  size_t total_errors = 0;
  size_t binned_errors = 0;
};

ErrorZoom error_zoom(const EDPResult& edp);

std::string edp_to_json(const EDPResult& edp, const ErrorZoom* zoom = nullptr);
std::string edp_to_csv(const EDPResult& edp);

}  // namespace devperf
