#include "devperf/outcome.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace devperf {

std::string encode_outcome(size_t true_index, size_t pred_index, size_t n_classes) {
  if (true_index >= n_classes || pred_index >= n_classes)
    throw std::out_of_range("encode_outcome: class index out of range");
  if (true_index == pred_index) return "0";
  std::string t = std::to_string(true_index + 1);
  std::string p = std::to_string(pred_index + 1);
  if (n_classes <= 9) return t + p;
  return t + "|" + p;
}

bool CodeUniverse::contains(const std::string& code) const {
  return std::find(codes.begin(), codes.end(), code) != codes.end();
}

size_t CodeUniverse::index_of(const std::string& code) const {
  auto it = std::find(codes.begin(), codes.end(), code);
  if (it == codes.end()) throw std::out_of_range("code not in universe: " + code);
  return static_cast<size_t>(it - codes.begin());
}

CodeUniverse make_code_universe(std::span<const std::string> observed) {
  std::set<std::string> misses;
  bool has_hit = false;
  for (const auto& c : observed) {
    if (c == "0")
      has_hit = true;
    else
      misses.insert(c);
  }
  CodeUniverse u;
  if (has_hit) u.codes.push_back("0");
  u.codes.insert(u.codes.end(), misses.begin(), misses.end());
  return u;
}

std::vector<double> ConfusionDistribution::proportions() const {
  std::vector<double> p(counts.size(), 0.0);
  if (total > 0)
    for (size_t i = 0; i < counts.size(); ++i) p[i] = counts[i] / total;
  return p;
}

ConfusionDistribution count_outcomes(std::span<const uint32_t> code_ids,
                                     const CodeUniverse& universe) {
  ConfusionDistribution d;
  d.counts.assign(universe.size(), 0.0);
  for (uint32_t id : code_ids) {
    if (id >= d.counts.size()) throw std::out_of_range("count_outcomes: code id out of range");
    d.counts[id] += 1.0;
    d.total += 1.0;
  }
  return d;
}

std::string cm_string(const ConfusionDistribution& dist, const CodeUniverse& universe) {
  if (dist.counts.size() != universe.size())
    throw std::invalid_argument("cm_string: distribution does not match universe");
  std::vector<double> props = dist.proportions();
  std::ostringstream cells;
  bool first = true;
  char buf[32];
  for (size_t i = 0; i < universe.size(); ++i) {
    if (dist.counts[i] <= 0) continue;
    if (!first) cells << ',';
    first = false;
    std::snprintf(buf, sizeof buf, "%.3f", props[i]);
    cells << universe.codes[i] << '/' << buf;
  }
  if (first) return "CM={ }";
  return "CM={ " + cells.str() + " }";
}

}  // namespace devperf
