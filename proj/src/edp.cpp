#include "devperf/edp.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "devperf/csv.hpp"
#include "devperf/errors.hpp"

namespace devperf {

EDPResult compute_edp(const Dataset& dataset, const PredictionSet& preds,
                      const std::string& predictor, const std::optional<BinScheme>& scheme,
                      Diagnostics* diag) {
  if (preds.n() != dataset.n_rows)
    throw DataError("edp: prediction set does not cover the dataset");
  std::optional<size_t> col_idx = dataset.column_index(predictor);
  if (!col_idx) throw DataError("edp: unknown predictor '" + predictor + "'");
  if (*col_idx == dataset.target_index)
    throw DataError("edp: predictor '" + predictor + "' is the target");
  const Column& col = dataset.columns[*col_idx];

  EDPResult r;
  r.predictor = predictor;
  r.n_rows = dataset.n_rows;

  OutcomeColumn oc = encode_outcomes(preds);
  r.universe = std::move(oc.universe);
  r.row_codes = std::move(oc.ids);
  r.global = count_outcomes(r.row_codes, r.universe);

  if (scheme) {
    if (scheme->predictor != predictor)
      throw ConfigError("edp: bin scheme is for '" + scheme->predictor + "'");
    r.scheme = *scheme;
  } else if (col.kind == ColumnKind::Numeric) {
    r.scheme = quantile_bins(col.numeric, default_quantile_probs(), predictor);
  } else {
    r.scheme = categorical_bins(col, predictor);
  }

  r.per_bin.assign(r.scheme.bins.size(), ConfusionDistribution{});
  for (auto& d : r.per_bin) d.counts.assign(r.universe.size(), 0.0);
  r.row_bins.assign(dataset.n_rows, -1);
  for (size_t i = 0; i < dataset.n_rows; ++i) {
    if (col.is_missing(i)) {
      ++r.n_missing;
      continue;
    }
    FindBinResult f = col.kind == ColumnKind::Numeric ? find_bin(col.numeric[i], r.scheme)
                                                      : find_bin(col.category(i), r.scheme);
    if (f.clamped && diag) ++diag->out_of_range_clamps;
    r.row_bins[i] = static_cast<int32_t>(f.index);
    r.per_bin[f.index].counts[r.row_codes[i]] += 1.0;
    r.per_bin[f.index].total += 1.0;
  }
  return r;
}

ErrorZoom error_zoom(const EDPResult& edp) {
  ErrorZoom z;
  for (const auto& c : edp.universe.codes)
    if (c != "0") z.miss_universe.codes.push_back(c);

  std::vector<int> remap(edp.universe.size(), -1);
  for (size_t i = 0; i < edp.universe.size(); ++i)
    if (edp.universe.codes[i] != "0")
      remap[i] = static_cast<int>(z.miss_universe.index_of(edp.universe.codes[i]));

  z.global.counts.assign(z.miss_universe.size(), 0.0);
  z.per_bin.assign(edp.per_bin.size(), ConfusionDistribution{});
  for (auto& d : z.per_bin) d.counts.assign(z.miss_universe.size(), 0.0);

  for (size_t row = 0; row < edp.row_codes.size(); ++row) {
    int m = remap[edp.row_codes[row]];
    if (m < 0) continue;
    ++z.total_errors;
    z.global.counts[static_cast<size_t>(m)] += 1.0;
    z.global.total += 1.0;
    int32_t bin = edp.row_bins[row];
    if (bin < 0) continue;
    ++z.binned_errors;
    z.per_bin[static_cast<size_t>(bin)].counts[static_cast<size_t>(m)] += 1.0;
    z.per_bin[static_cast<size_t>(bin)].total += 1.0;
  }

  z.bin_share.assign(z.per_bin.size(), 0.0);
  if (z.binned_errors > 0)
    for (size_t b = 0; b < z.per_bin.size(); ++b)
      z.bin_share[b] = z.per_bin[b].total / static_cast<double>(z.binned_errors);
  return z;
}

namespace {

nlohmann::ordered_json dist_json(const ConfusionDistribution& d, const CodeUniverse& u) {
  nlohmann::ordered_json j;
  j["n"] = d.total;
  j["counts"] = d.counts;
  j["proportions"] = d.proportions();
  j["cm"] = cm_string(d, u);
  return j;
}

}  // namespace

std::string edp_to_json(const EDPResult& edp, const ErrorZoom* zoom) {
  nlohmann::ordered_json j;
  j["predictor"] = edp.predictor;
  j["n_rows"] = edp.n_rows;
  j["n_missing"] = edp.n_missing;
  j["codes"] = edp.universe.codes;
  j["global"] = dist_json(edp.global, edp.universe);
  nlohmann::ordered_json bins = nlohmann::ordered_json::array();
  for (size_t b = 0; b < edp.scheme.bins.size(); ++b) {
    nlohmann::ordered_json bj = dist_json(edp.per_bin[b], edp.universe);
    bj["label"] = edp.scheme.bins[b].label;
    bins.push_back(std::move(bj));
  }
  j["bins"] = bins;
  if (zoom) {
    nlohmann::ordered_json zj;
    zj["codes"] = zoom->miss_universe.codes;
    zj["total_errors"] = zoom->total_errors;
    zj["binned_errors"] = zoom->binned_errors;
    zj["global"] = zoom->global.counts;
    nlohmann::ordered_json zbins = nlohmann::ordered_json::array();
    for (size_t b = 0; b < zoom->per_bin.size(); ++b) {
      nlohmann::ordered_json bj;
      bj["label"] = edp.scheme.bins[b].label;
      bj["counts"] = zoom->per_bin[b].counts;
      bj["share"] = zoom->bin_share[b];
      zbins.push_back(std::move(bj));
    }
    zj["bins"] = zbins;
    j["zoom"] = std::move(zj);
  }
  return j.dump(2);
}

std::string edp_to_csv(const EDPResult& edp) {
  std::ostringstream out;
  out << "predictor,bin,code,count,proportion\n";
  char buf[32];
  auto emit = [&](const std::string& bin, const ConfusionDistribution& d) {
    std::vector<double> props = d.proportions();
    for (size_t i = 0; i < edp.universe.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6f", props[i]);
      out << csv_field(edp.predictor) << ',' << csv_field(bin) << ',' << edp.universe.codes[i]
          << ',' << static_cast<long long>(d.counts[i]) << ',' << buf << '\n';
    }
  };
  emit("GLOBAL", edp.global);
  for (size_t b = 0; b < edp.scheme.bins.size(); ++b)
    emit(edp.scheme.bins[b].label, edp.per_bin[b]);
  return out.str();
}

}  // namespace devperf
