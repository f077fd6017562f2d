#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "devperf/dataset.hpp"

namespace devperf {

/// One cell of a predictor-domain partition. Numeric bins are intervals:
/// the first bin is closed on both ends, later bins left-open right-closed,
/// and a degenerate bin (lower == upper) absorbs heavy ties at the minimum.
/// A categorical bin holds exactly one category.
struct Bin {
  std::string label;
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;
  std::string category;
};

struct BinScheme {
  std::string predictor;
  ColumnKind kind = ColumnKind::Numeric;
  std::vector<Bin> bins;
  /// Numeric only: the retained edge list. A duplicated first edge marks a
  /// degenerate first bin, so schemes round-trip through JSON losslessly.
  std::vector<double> edges;
};

/// The default quantile grid: 10/35/65/90%, yielding up to five bands from
/// extremely low to extremely high values.
std::span<const double> default_quantile_probs();

/// Numbers in bin labels carry at most 4 significant digits; exact
/// boundaries stay in `edges`.
std::string format_boundary(double v);

/// Empirical quantile with linear interpolation between order statistics
/// (the common "type 7" estimator). `sorted` must be ascending, non-empty.
double quantile_type7(std::span<const double> sorted, double p);

/// Quantile bins over the non-missing values of a numeric column. Duplicate
/// boundaries collapse so bins stay distinct; ties at the minimum produce a
/// degenerate first bin.
BinScheme quantile_bins(std::span<const double> values,
                        std::span<const double> probs = default_quantile_probs(),
                        std::string predictor = {});

/// Numeric bins from an explicit edge list (user-defined ranges or a
/// reloaded scheme). Uses the same collapsing rules as quantile_bins.
BinScheme bins_from_edges(std::string predictor, std::vector<double> edges);

/// One bin per distinct observed category, first-appearance order.
BinScheme categorical_bins(const Column& column, std::string predictor = {});

struct FindBinResult {
  size_t index = 0;
  bool clamped = false;  // numeric value fell outside all bins
};

/// Locate a numeric value; out-of-range values clamp to the boundary bins.
FindBinResult find_bin(double value, const BinScheme& scheme);

/// Locate a category; throws UnknownCategoryError for unseen categories.
FindBinResult find_bin(const std::string& category, const BinScheme& scheme);

/// Replace numeric predictor cells by their bin labels; categorical cells,
/// missing cells and the target pass through. Out-of-range clamps are
/// counted in diag.
Dataset discretize(const Dataset& dataset, const std::vector<BinScheme>& schemes,
                   Diagnostics* diag = nullptr);

/// Build a scheme for every predictor not already covered by `overrides`:
/// quantile bins for numeric columns, category bins otherwise.
std::vector<BinScheme> default_schemes(const Dataset& dataset,
                                       const std::map<std::string, std::vector<double>>& overrides = {});

/// JSON round-trip: {"predictor", "kind", "boundaries" | "categories"}.
std::string scheme_to_json(const BinScheme& scheme);
std::string schemes_to_json(std::span<const BinScheme> schemes);
std::vector<BinScheme> schemes_from_json(const std::string& text);

/// Parse a --bins file: either a scheme array as written by schemes_to_json
/// or a plain {"predictor": [edge, ...]} override map.
std::map<std::string, std::vector<double>> load_bin_overrides(const std::string& path,
                                                              std::vector<BinScheme>* full_schemes);

}  // namespace devperf
