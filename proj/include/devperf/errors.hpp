#pragma once

#include <stdexcept>

namespace devperf {

/// Configuration problems: bad options, unusable paths, invalid thresholds.
/// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data problems: malformed CSV, misaligned predictions, unknown columns.
/// The CLI maps these to exit code 3.
class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A categorical value that the bin scheme being applied has never seen.
class UnknownCategoryError : public DataError {
  using DataError::DataError;
};

}  // namespace devperf
