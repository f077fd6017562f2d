#include "devperf/cv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "devperf/csv.hpp"
#include "devperf/errors.hpp"
#include "devperf/rng.hpp"

namespace devperf {

double PredictionSet::accuracy() const {
  if (true_codes.empty()) return 0.0;
  size_t hits = 0;
  for (size_t i = 0; i < true_codes.size(); ++i)
    if (true_codes[i] == pred_codes[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(true_codes.size());
}

std::vector<std::vector<uint32_t>> kfold_partition(size_t n, size_t k, uint64_t seed) {
  if (k < 2) throw ConfigError("k-fold: k must be at least 2");
  if (k > n) throw ConfigError("k-fold: k exceeds the number of rows");
  std::vector<uint32_t> order = shuffled_indices(n, seed);
  std::vector<std::vector<uint32_t>> folds(k);
  size_t base = n / k, rem = n % k, pos = 0;
  for (size_t f = 0; f < k; ++f) {
    size_t sz = base + (f < rem ? 1 : 0);
    folds[f].assign(order.begin() + pos, order.begin() + pos + sz);
    pos += sz;
  }
  return folds;
}

PredictionSet cross_val_predict(const Dataset& dataset, const Learner& learner, size_t k,
                                uint64_t seed, Diagnostics* diag) {
  const Column& target = dataset.target();
  PredictionSet out;
  out.labels = target.categories;
  out.true_codes = target.codes;
  out.pred_codes.assign(dataset.n_rows, -1);
  out.k = k;
  out.seed = seed;
  out.learner = learner.name();

  auto folds = kfold_partition(dataset.n_rows, k, seed);
  std::vector<char> in_fold(dataset.n_rows, 0);
  for (size_t f = 0; f < folds.size(); ++f) {
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (uint32_t r : folds[f]) in_fold[r] = 1;
    std::vector<uint32_t> train;
    train.reserve(dataset.n_rows - folds[f].size());
    for (uint32_t r = 0; r < dataset.n_rows; ++r)
      if (!in_fold[r]) train.push_back(r);

    if (diag) {
      std::vector<char> seen(out.labels.size(), 0);
      for (uint32_t r : train) seen[static_cast<size_t>(target.codes[r])] = 1;
      for (size_t c = 0; c < seen.size(); ++c)
        if (!seen[c])
          diag->warn("fold " + std::to_string(f + 1) + ": class '" + out.labels[c] +
                     "' absent from training split");
    }

    auto model = learner.fit(dataset, train, diag);
    for (uint32_t r : folds[f]) out.pred_codes[r] = model->predict(dataset, r, diag);
  }
  return out;
}

PredictionSet import_predictions_text(const std::string& text, const Dataset& dataset) {
  std::istringstream in(text);
  auto rows = parse_csv(in);
  if (rows.empty()) throw DataError("predictions: empty file");
  const auto& header = rows.front();
  if (header.size() != 3 || header[0] != "row_id" || header[1] != "true" || header[2] != "pred")
    throw DataError("predictions: header must be row_id,true,pred");

  const Column& target = dataset.target();
  PredictionSet out;
  out.labels = target.categories;
  out.true_codes = target.codes;
  out.pred_codes.assign(dataset.n_rows, -1);
  out.k = 0;
  out.learner = "imported";

  std::vector<char> seen(dataset.n_rows, 0);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& rec = rows[i];
    if (rec.size() != 3)
      throw DataError("predictions line " + std::to_string(i + 1) + ": expected 3 fields");
    size_t row = 0;
    auto [p, ec] = std::from_chars(rec[0].data(), rec[0].data() + rec[0].size(), row);
    if (ec != std::errc() || p != rec[0].data() + rec[0].size() || row >= dataset.n_rows)
      throw DataError("predictions line " + std::to_string(i + 1) + ": bad row_id '" + rec[0] +
                      "'");
    if (seen[row])
      throw DataError("predictions line " + std::to_string(i + 1) + ": duplicate row_id " +
                      rec[0]);
    seen[row] = 1;

    const std::string& true_label = target.categories[static_cast<size_t>(target.codes[row])];
    if (rec[1] != true_label)
      throw DataError("predictions line " + std::to_string(i + 1) + ": true label '" + rec[1] +
                      "' does not match dataset ('" + true_label + "')");

    auto it = std::find(out.labels.begin(), out.labels.end(), rec[2]);
    size_t code;
    if (it == out.labels.end()) {
      code = out.labels.size();
      out.labels.push_back(rec[2]);
    } else {
      code = static_cast<size_t>(it - out.labels.begin());
    }
    out.pred_codes[row] = static_cast<int32_t>(code);
  }
  for (size_t r = 0; r < dataset.n_rows; ++r)
    if (!seen[r]) throw DataError("predictions: missing row_id " + std::to_string(r));
  return out;
}

PredictionSet import_predictions(const std::string& path, const Dataset& dataset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open predictions file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_predictions_text(buf.str(), dataset);
}

OutcomeColumn encode_outcomes(const PredictionSet& preds) {
  std::vector<std::string> codes(preds.n());
  size_t n_classes = preds.labels.size();
  for (size_t i = 0; i < preds.n(); ++i)
    codes[i] = encode_outcome(static_cast<size_t>(preds.true_codes[i]),
                              static_cast<size_t>(preds.pred_codes[i]), n_classes);
  OutcomeColumn out;
  out.universe = make_code_universe(codes);
  out.ids.resize(preds.n());
  for (size_t i = 0; i < preds.n(); ++i)
    out.ids[i] = static_cast<uint32_t>(out.universe.index_of(codes[i]));
  return out;
}

std::string export_predictions_csv(const PredictionSet& preds) {
  std::ostringstream out;
  out << "row_id,true,pred\n";
  for (size_t r = 0; r < preds.n(); ++r) {
    out << r << ',' << csv_field(preds.labels[static_cast<size_t>(preds.true_codes[r])]) << ','
        << csv_field(preds.labels[static_cast<size_t>(preds.pred_codes[r])]) << '\n';
  }
  return out.str();
}

}  // namespace devperf
