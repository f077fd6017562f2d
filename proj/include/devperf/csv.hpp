#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "devperf/dataset.hpp"

namespace devperf {

struct CsvOptions {
  /// Cell contents treated as missing.
  std::vector<std::string> missing_markers = {"", "NA", "?"};
  /// Per-column kind overrides; these beat inference.
  std::vector<std::pair<std::string, ColumnKind>> kind_hints;
};

/// RFC 4180 record splitter: quoted fields, doubled quotes, LF or CRLF
/// endings, newlines inside quotes. Returns one field vector per record,
/// skipping a UTF-8 BOM and a trailing empty line.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// Quotes a field for CSV output when it needs it.
std::string csv_field(const std::string& s);

/// Load a typed Dataset from a header-first CSV. A column is numeric when
/// every non-missing cell parses as a number; hints override. Rows whose
/// target cell is missing are rejected with a diagnostic; a record with the
/// wrong field count is a DataError.
Dataset load_csv(const std::string& path, const std::string& target,
                 const CsvOptions& opts = {}, Diagnostics* diag = nullptr);

Dataset load_csv_stream(std::istream& in, const std::string& target,
                        const CsvOptions& opts = {}, Diagnostics* diag = nullptr);

}  // namespace devperf
