#include "devperf/learner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "devperf/errors.hpp"

namespace devperf {

namespace {

// Stand-in log probability for events the training split never produced.
// Keeps scores finite so a single unseen category does not erase the rest
// of the evidence.
constexpr double kLogFloor = -700.0;
constexpr double kVarFloor = 1e-9;

int32_t majority_code(const Dataset& data, std::span<const uint32_t> rows) {
  const Column& target = data.target();
  std::vector<size_t> counts(target.categories.size(), 0);
  for (uint32_t r : rows) {
    int32_t c = target.codes[r];
    if (c >= 0) ++counts[static_cast<size_t>(c)];
  }
  size_t best = 0;
  for (size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[best]) best = c;
  return static_cast<int32_t>(best);
}

class MajorityModel final : public Model {
 public:
  explicit MajorityModel(int32_t code) : code_(code) {}
  int32_t predict(const Dataset&, size_t, Diagnostics*) const override { return code_; }

 private:
  int32_t code_;
};

class MajorityLearner final : public Learner {
 public:
  std::unique_ptr<Model> fit(const Dataset& data, std::span<const uint32_t> rows,
                             Diagnostics*) const override {
    if (rows.empty()) throw DataError("majority: empty training split");
    return std::make_unique<MajorityModel>(majority_code(data, rows));
  }
  std::string name() const override { return "majority"; }
};

struct GaussianStats {
  double mean = 0.0;
  double var = kVarFloor;
  size_t n = 0;
};

class NaiveBayesModel final : public Model {
 public:
  NaiveBayesModel(const Dataset& data, std::span<const uint32_t> rows) {
    const Column& target = data.target();
    n_classes_ = target.categories.size();
    predictors_ = data.predictor_indices();
    class_counts_.assign(n_classes_, 0);
    for (uint32_t r : rows) ++class_counts_[static_cast<size_t>(target.codes[r])];

    log_prior_.assign(n_classes_, kLogFloor);
    double total = static_cast<double>(rows.size());
    for (size_t c = 0; c < n_classes_; ++c)
      if (class_counts_[c] > 0)
        log_prior_[c] = std::log(static_cast<double>(class_counts_[c]) / total);

    for (size_t p : predictors_) {
      const Column& col = data.columns[p];
      if (col.kind == ColumnKind::Categorical) {
        CatTable t;
        t.counts.assign(n_classes_, std::vector<size_t>(col.categories.size(), 0));
        t.totals.assign(n_classes_, 0);
        for (uint32_t r : rows) {
          int32_t v = col.codes[r];
          if (v < 0) continue;
          size_t c = static_cast<size_t>(target.codes[r]);
          ++t.counts[c][static_cast<size_t>(v)];
          ++t.totals[c];
        }
        cat_tables_.push_back(std::move(t));
        num_tables_.emplace_back();
      } else {
        std::vector<GaussianStats> g(n_classes_);
        std::vector<double> sum(n_classes_, 0.0), sumsq(n_classes_, 0.0);
        for (uint32_t r : rows) {
          if (col.is_missing(r)) continue;
          size_t c = static_cast<size_t>(target.codes[r]);
          double v = col.numeric[r];
          sum[c] += v;
          sumsq[c] += v * v;
          ++g[c].n;
        }
        for (size_t c = 0; c < n_classes_; ++c) {
          if (g[c].n == 0) continue;
          double n = static_cast<double>(g[c].n);
          g[c].mean = sum[c] / n;
          if (g[c].n > 1) {
            double ss = sumsq[c] - n * g[c].mean * g[c].mean;
            g[c].var = std::max(ss / (n - 1.0), kVarFloor);
          }
        }
        num_tables_.push_back(std::move(g));
        cat_tables_.emplace_back();
      }
    }
    majority_ = majority_code(data, rows);
  }

  int32_t predict(const Dataset& data, size_t row, Diagnostics* diag) const override {
    std::vector<double> score = log_prior_;
    bool any_feature = false;
    for (size_t i = 0; i < predictors_.size(); ++i) {
      const Column& col = data.columns[predictors_[i]];
      if (col.is_missing(row)) continue;
      any_feature = true;
      if (col.kind == ColumnKind::Categorical) {
        const CatTable& t = cat_tables_[i];
        size_t v = static_cast<size_t>(col.codes[row]);
        for (size_t c = 0; c < n_classes_; ++c) {
          if (class_counts_[c] == 0) continue;
          size_t hit = v < t.counts[c].size() ? t.counts[c][v] : 0;
          score[c] += (hit > 0 && t.totals[c] > 0)
                          ? std::log(static_cast<double>(hit) / static_cast<double>(t.totals[c]))
                          : kLogFloor;
        }
      } else {
        const auto& g = num_tables_[i];
        double x = col.numeric[row];
        for (size_t c = 0; c < n_classes_; ++c) {
          if (class_counts_[c] == 0) continue;
          if (g[c].n == 0) {
            score[c] += kLogFloor;
            continue;
          }
          double d = x - g[c].mean;
          score[c] += -0.5 * std::log(2.0 * std::numbers::pi * g[c].var) - d * d / (2.0 * g[c].var);
        }
      }
    }
    if (!any_feature) {
      if (diag) diag->warn("row " + std::to_string(row) + ": all predictors missing, using majority class");
      return majority_;
    }
    size_t best = 0;
    for (size_t c = 1; c < n_classes_; ++c)
      if (score[c] > score[best]) best = c;
    return static_cast<int32_t>(best);
  }

 private:
  struct CatTable {
    std::vector<std::vector<size_t>> counts;
    std::vector<size_t> totals;
  };

  size_t n_classes_ = 0;
  std::vector<size_t> predictors_;
  std::vector<size_t> class_counts_;
  std::vector<double> log_prior_;
  std::vector<CatTable> cat_tables_;            // parallel to predictors_, empty slot if numeric
  std::vector<std::vector<GaussianStats>> num_tables_;
  int32_t majority_ = 0;
};

class NaiveBayesLearner final : public Learner {
 public:
  std::unique_ptr<Model> fit(const Dataset& data, std::span<const uint32_t> rows,
                             Diagnostics*) const override {
    if (rows.empty()) throw DataError("nb: empty training split");
    return std::make_unique<NaiveBayesModel>(data, rows);
  }
  std::string name() const override { return "nb"; }
};

}  // namespace

std::unique_ptr<Learner> make_learner(const std::string& name) {
  if (name == "nb") return std::make_unique<NaiveBayesLearner>();
  if (name == "majority") return std::make_unique<MajorityLearner>();
  throw ConfigError("unknown learner '" + name + "' (expected one of: nb, majority)");
}

std::vector<std::string> builtin_learner_names() { return {"nb", "majority"}; }

}  // namespace devperf
