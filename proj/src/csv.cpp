#include "devperf/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "devperf/errors.hpp"

namespace devperf {

std::string csv_field(const std::string& s) {
  // an empty field is quoted so it survives as a lone field on a line
  if (s.empty()) return "\"\"";
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    q += c;
    if (c == '"') q += '"';
  }
  return q + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string cell;
  bool in_quotes = false;
  bool cell_open = false;  // current record has content
  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        cell_open = true;
        break;
      case ',':
        fields.push_back(std::move(cell));
        cell.clear();
        cell_open = true;
        break;
      case '\r':
        break;
      case '\n':
        if (cell_open || !cell.empty() || !fields.empty()) {
          fields.push_back(std::move(cell));
          cell.clear();
          records.push_back(std::move(fields));
          fields.clear();
          cell_open = false;
        }
        break;
      default:
        cell.push_back(c);
        cell_open = true;
        break;
    }
  }
  if (in_quotes) throw DataError("csv: unterminated quoted field");
  if (cell_open || !cell.empty() || !fields.empty()) {
    fields.push_back(std::move(cell));
    records.push_back(std::move(fields));
  }
  // UTF-8 BOM on the first header field
  if (!records.empty() && !records[0].empty()) {
    std::string& first = records[0][0];
    if (first.size() >= 3 && first.compare(0, 3, "\xef\xbb\xbf") == 0) first.erase(0, 3);
  }
  return records;
}

namespace {

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parses_as_number(const std::string& s, double* out) {
  std::string t = trimmed(s);
  if (t.empty()) return false;
  const char* begin = t.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + t.size()) return false;
  *out = v;
  return true;
}

}  // namespace

Dataset load_csv_stream(std::istream& in, const std::string& target,
                        const CsvOptions& opts, Diagnostics* diag) {
  auto records = parse_csv(in);
  if (records.empty()) throw DataError("csv: empty file, header row required");
  const std::vector<std::string>& header = records[0];
  const size_t n_cols = header.size();

  Dataset d;
  d.columns.resize(n_cols);
  bool target_found = false;
  for (size_t c = 0; c < n_cols; ++c) {
    d.columns[c].name = header[c];
    if (header[c] == target) {
      d.target_index = c;
      target_found = true;
    }
  }
  if (!target_found) throw DataError("csv: target column '" + target + "' not in header");

  auto is_missing = [&](const std::string& s) {
    return std::find(opts.missing_markers.begin(), opts.missing_markers.end(), s) !=
           opts.missing_markers.end();
  };

  // First pass: arity check, drop rows with a missing target, infer kinds.
  std::vector<const std::vector<std::string>*> rows;
  rows.reserve(records.size() - 1);
  std::vector<bool> numeric_ok(n_cols, true);
  std::vector<bool> any_value(n_cols, false);
  for (size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != n_cols) {
      std::ostringstream msg;
      msg << "csv: row " << r + 1 << " has " << rec.size() << " fields, expected " << n_cols;
      throw DataError(msg.str());
    }
    if (is_missing(rec[d.target_index])) {
      if (diag) {
        std::ostringstream msg;
        msg << "csv: row " << r + 1 << " rejected, target cell missing";
        diag->warn(msg.str());
      }
      continue;
    }
    rows.push_back(&rec);
    for (size_t c = 0; c < n_cols; ++c) {
      if (is_missing(rec[c])) continue;
      any_value[c] = true;
      double v;
      if (numeric_ok[c] && !parses_as_number(rec[c], &v)) numeric_ok[c] = false;
    }
  }

  for (size_t c = 0; c < n_cols; ++c)
    d.columns[c].kind =
        (any_value[c] && numeric_ok[c]) ? ColumnKind::Numeric : ColumnKind::Categorical;
  for (const auto& [name, kind] : opts.kind_hints) {
    auto idx = d.column_index(name);
    if (!idx) throw ConfigError("kind hint names unknown column '" + name + "'");
    d.columns[*idx].kind = kind;
  }
  d.columns[d.target_index].kind = ColumnKind::Categorical;

  d.n_rows = rows.size();
  for (size_t c = 0; c < n_cols; ++c) {
    Column& col = d.columns[c];
    if (col.kind == ColumnKind::Numeric)
      col.numeric.reserve(d.n_rows);
    else
      col.codes.reserve(d.n_rows);
  }

  for (const auto* rec : rows) {
    for (size_t c = 0; c < n_cols; ++c) {
      Column& col = d.columns[c];
      const std::string& cell = (*rec)[c];
      if (is_missing(cell)) {
        if (col.kind == ColumnKind::Numeric)
          col.numeric.push_back(std::nan(""));
        else
          col.codes.push_back(-1);
        continue;
      }
      if (col.kind == ColumnKind::Numeric) {
        double v;
        if (!parses_as_number(cell, &v))
          throw DataError("csv: non-numeric cell '" + cell + "' in numeric column '" +
                          col.name + "'");
        col.numeric.push_back(v);
      } else {
        auto it = std::find(col.categories.begin(), col.categories.end(), cell);
        if (it == col.categories.end()) {
          col.categories.push_back(cell);
          col.codes.push_back(static_cast<int32_t>(col.categories.size() - 1));
        } else {
          col.codes.push_back(static_cast<int32_t>(it - col.categories.begin()));
        }
      }
    }
  }
  return d;
}

Dataset load_csv(const std::string& path, const std::string& target, const CsvOptions& opts,
                 Diagnostics* diag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open data file: " + path);
  return load_csv_stream(in, target, opts, diag);
}

}  // namespace devperf
