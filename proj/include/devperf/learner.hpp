#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "devperf/dataset.hpp"

namespace devperf {

// Predictions are class codes into target().categories.
class Model {
 public:
  virtual ~Model() = default;
  virtual int32_t predict(const Dataset& data, size_t row, Diagnostics* diag = nullptr) const = 0;
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::unique_ptr<Model> fit(const Dataset& data, std::span<const uint32_t> rows,
                                     Diagnostics* diag = nullptr) const = 0;
  virtual std::string name() const = 0;
};

std::unique_ptr<Learner> make_learner(const std::string& name);  // ConfigError on unknown
std::vector<std::string> builtin_learner_names();

}  // namespace devperf
