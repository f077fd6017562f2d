#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace devperf {

// Hit is "0". A miss concatenates the 1-based true and predicted class
// indices ("12", "21"); with more than nine classes the indices are joined
// with '|' ("3|11") so codes stay unambiguous.
std::string encode_outcome(size_t true_index, size_t pred_index, size_t n_classes);

// Fixed ordering of outcome codes shared by every distribution in a run:
// hit first, then miss codes lexically.
struct CodeUniverse {
  std::vector<std::string> codes;

  size_t size() const { return codes.size(); }
  bool contains(const std::string& code) const;
  size_t index_of(const std::string& code) const;  // throws std::out_of_range
};

CodeUniverse make_code_universe(std::span<const std::string> observed);

// Counts aligned to a CodeUniverse.
struct ConfusionDistribution {
  std::vector<double> counts;
  double total = 0.0;

  std::vector<double> proportions() const;
};

ConfusionDistribution count_outcomes(std::span<const uint32_t> code_ids,
                                     const CodeUniverse& universe);

// "CM={ 0/0.854,12/0.044,21/0.102 }": nonzero cells only, universe order.
std::string cm_string(const ConfusionDistribution& dist, const CodeUniverse& universe);

}  // namespace devperf
