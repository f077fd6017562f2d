#include "devperf/bins.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "devperf/errors.hpp"

namespace devperf {

std::span<const double> default_quantile_probs() {
  static const double probs[] = {0.10, 0.35, 0.65, 0.90};
  return probs;
}

std::string format_boundary(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty values");
  if (sorted.size() == 1) return sorted[0];
  double h = p * static_cast<double>(sorted.size() - 1);
  double lo = std::floor(h);
  size_t i = static_cast<size_t>(lo);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (h - lo) * (sorted[i + 1] - sorted[i]);
}

namespace {

std::string interval_label(double lo, double hi, bool closed_left) {
  std::ostringstream s;
  s << (closed_left ? '[' : ']') << format_boundary(lo) << " : " << format_boundary(hi) << ']';
  return s.str();
}

// Shared constructor: raw edges may contain duplicates; duplicates at the
// minimum (or a single-point domain) yield a degenerate first bin, other
// duplicates just collapse.
BinScheme make_numeric_scheme(std::string predictor, const std::vector<double>& raw_edges) {
  if (raw_edges.empty()) throw std::invalid_argument("bins: empty edge list");
  for (double e : raw_edges)
    if (!std::isfinite(e)) throw std::invalid_argument("bins: non-finite edge");

  std::vector<double> edges = raw_edges;
  std::sort(edges.begin(), edges.end());
  size_t dup_at_min = 0;
  while (dup_at_min + 1 < edges.size() && edges[dup_at_min + 1] == edges.front()) ++dup_at_min;
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  bool degenerate_first = dup_at_min > 0 || edges.size() == 1;

  BinScheme scheme;
  scheme.predictor = std::move(predictor);
  scheme.kind = ColumnKind::Numeric;
  if (degenerate_first) {
    Bin b;
    b.lower = b.upper = edges.front();
    b.degenerate = true;
    b.label = format_boundary(b.lower);
    scheme.bins.push_back(std::move(b));
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    Bin b;
    b.lower = edges[i];
    b.upper = edges[i + 1];
    bool closed_left = i == 0 && !degenerate_first;
    b.label = interval_label(b.lower, b.upper, closed_left);
    scheme.bins.push_back(std::move(b));
  }
  scheme.edges = edges;
  if (degenerate_first) scheme.edges.insert(scheme.edges.begin(), edges.front());
  return scheme;
}

}  // namespace

BinScheme quantile_bins(std::span<const double> values, std::span<const double> probs,
                        std::string predictor) {
  std::vector<double> v;
  v.reserve(values.size());
  for (double x : values) {
    if (std::isnan(x)) continue;
    if (!std::isfinite(x)) throw std::invalid_argument("quantile_bins: non-finite value");
    v.push_back(x);
  }
  if (v.empty()) throw std::invalid_argument("quantile_bins: no non-missing values");
  double prev = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] > 0.0 && probs[i] < 1.0))
      throw std::invalid_argument("quantile_bins: probs must lie in (0,1)");
    if (i > 0 && probs[i] <= prev)
      throw std::invalid_argument("quantile_bins: probs must be strictly increasing");
    prev = probs[i];
  }
  std::sort(v.begin(), v.end());

  std::vector<double> edges;
  edges.push_back(v.front());
  for (double p : probs) edges.push_back(quantile_type7(v, p));
  edges.push_back(v.back());
  return make_numeric_scheme(std::move(predictor), edges);
}

BinScheme bins_from_edges(std::string predictor, std::vector<double> edges) {
  return make_numeric_scheme(std::move(predictor), edges);
}

BinScheme categorical_bins(const Column& column, std::string predictor) {
  if (column.kind != ColumnKind::Categorical)
    throw std::invalid_argument("categorical_bins: column '" + column.name +
                                "' is not categorical");
  BinScheme scheme;
  scheme.predictor = predictor.empty() ? column.name : std::move(predictor);
  scheme.kind = ColumnKind::Categorical;
  for (const std::string& cat : column.categories) {
    Bin b;
    b.category = cat;
    b.label = cat;
    scheme.bins.push_back(std::move(b));
  }
  if (scheme.bins.empty())
    throw std::invalid_argument("categorical_bins: column '" + column.name +
                                "' has no observed categories");
  return scheme;
}

FindBinResult find_bin(double value, const BinScheme& scheme) {
  if (scheme.kind != ColumnKind::Numeric)
    throw std::invalid_argument("find_bin: numeric value against categorical scheme");
  if (std::isnan(value)) throw std::invalid_argument("find_bin: missing value");
  const auto& bins = scheme.bins;
  if (value < bins.front().lower) return {0, true};
  if (value > bins.back().upper) return {bins.size() - 1, true};
  for (size_t i = 0; i < bins.size(); ++i) {
    const Bin& b = bins[i];
    bool inside = i == 0 ? (value >= b.lower && value <= b.upper)
                         : (value > b.lower && value <= b.upper);
    if (inside) return {i, false};
  }
  // unreachable for well-formed schemes; clamp defensively
  return {bins.size() - 1, true};
}

FindBinResult find_bin(const std::string& category, const BinScheme& scheme) {
  if (scheme.kind != ColumnKind::Categorical)
    throw std::invalid_argument("find_bin: categorical value against numeric scheme");
  for (size_t i = 0; i < scheme.bins.size(); ++i)
    if (scheme.bins[i].category == category) return {i, false};
  throw UnknownCategoryError("find_bin: category '" + category + "' not in scheme for '" +
                             scheme.predictor + "'");
}

Dataset discretize(const Dataset& dataset, const std::vector<BinScheme>& schemes,
                   Diagnostics* diag) {
  auto scheme_for = [&](const std::string& name) -> const BinScheme* {
    for (const auto& s : schemes)
      if (s.predictor == name) return &s;
    return nullptr;
  };

  Dataset out;
  out.n_rows = dataset.n_rows;
  out.target_index = dataset.target_index;
  out.columns.reserve(dataset.columns.size());
  for (size_t c = 0; c < dataset.columns.size(); ++c) {
    const Column& col = dataset.columns[c];
    if (c == dataset.target_index || col.kind == ColumnKind::Categorical) {
      out.columns.push_back(col);
      continue;
    }
    const BinScheme* scheme = scheme_for(col.name);
    if (!scheme)
      throw DataError("discretize: no bin scheme for numeric predictor '" + col.name + "'");
    Column binned;
    binned.name = col.name;
    binned.kind = ColumnKind::Categorical;
    for (const Bin& b : scheme->bins) binned.categories.push_back(b.label);
    binned.codes.reserve(dataset.n_rows);
    for (size_t r = 0; r < dataset.n_rows; ++r) {
      if (col.is_missing(r)) {
        binned.codes.push_back(-1);
        continue;
      }
      FindBinResult f = find_bin(col.numeric[r], *scheme);
      if (f.clamped && diag) ++diag->out_of_range_clamps;
      binned.codes.push_back(static_cast<int32_t>(f.index));
    }
    out.columns.push_back(std::move(binned));
  }
  return out;
}

std::vector<BinScheme> default_schemes(const Dataset& dataset,
                                       const std::map<std::string, std::vector<double>>& overrides) {
  std::vector<BinScheme> schemes;
  for (size_t c : dataset.predictor_indices()) {
    const Column& col = dataset.columns[c];
    auto ov = overrides.find(col.name);
    if (ov != overrides.end()) {
      schemes.push_back(bins_from_edges(col.name, ov->second));
      continue;
    }
    if (col.kind == ColumnKind::Numeric) {
      try {
        schemes.push_back(quantile_bins(col.numeric, default_quantile_probs(), col.name));
      } catch (const std::invalid_argument&) {
        throw DataError("column '" + col.name + "' has no usable values for binning");
      }
    } else {
      schemes.push_back(categorical_bins(col, col.name));
    }
  }
  return schemes;
}

namespace {

nlohmann::ordered_json scheme_json(const BinScheme& s) {
  nlohmann::ordered_json j;
  j["predictor"] = s.predictor;
  if (s.kind == ColumnKind::Numeric) {
    j["kind"] = "numeric";
    j["boundaries"] = s.edges;
  } else {
    j["kind"] = "categorical";
    std::vector<std::string> cats;
    for (const Bin& b : s.bins) cats.push_back(b.category);
    j["categories"] = cats;
  }
  return j;
}

BinScheme scheme_from(const nlohmann::json& j) {
  std::string pred = j.at("predictor").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "numeric")
    return bins_from_edges(pred, j.at("boundaries").get<std::vector<double>>());
  if (kind != "categorical") throw DataError("bin scheme: unknown kind '" + kind + "'");
  BinScheme s;
  s.predictor = pred;
  s.kind = ColumnKind::Categorical;
  for (const auto& cat : j.at("categories")) {
    Bin b;
    b.category = cat.get<std::string>();
    b.label = b.category;
    s.bins.push_back(std::move(b));
  }
  return s;
}

}  // namespace

std::string scheme_to_json(const BinScheme& scheme) { return scheme_json(scheme).dump(2); }

std::string schemes_to_json(std::span<const BinScheme> schemes) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : schemes) arr.push_back(scheme_json(s));
  return arr.dump(2);
}

std::vector<BinScheme> schemes_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<BinScheme> out;
  if (j.is_array())
    for (const auto& e : j) out.push_back(scheme_from(e));
  else
    out.push_back(scheme_from(j));
  return out;
}

std::map<std::string, std::vector<double>> load_bin_overrides(const std::string& path,
                                                              std::vector<BinScheme>* full_schemes) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bins file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("bins file '" + path + "': " + e.what());
  }
  std::map<std::string, std::vector<double>> overrides;
  if (j.is_array()) {
    if (full_schemes)
      for (const auto& e : j) full_schemes->push_back(scheme_from(e));
    return overrides;
  }
  if (j.is_object() && j.contains("predictor")) {
    if (full_schemes) full_schemes->push_back(scheme_from(j));
    return overrides;
  }
  if (!j.is_object()) throw DataError("bins file '" + path + "': expected object or array");
  for (auto it = j.begin(); it != j.end(); ++it)
    overrides[it.key()] = it.value().get<std::vector<double>>();
  return overrides;
}

}  // namespace devperf
