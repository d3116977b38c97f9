#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalelaw/errors.hpp"

namespace scalelaw {

// One training run. model_params (N) and train_tokens (D) are counts; they
// are stored as doubles so planned allocations with non-integer token budgets
// survive a CSV round trip (exact for counts below 2^53).
struct ExperimentRecord {
  std::string arch_id;
  double model_params = 0;
  double train_tokens = 0;
  double xi = 0;  // training FLOPs per parameter per token
  double test_loss = 0;
  std::optional<double> unique_tokens;
  std::optional<bool> augmented;
  std::optional<double> wall_time_s;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

struct ExperimentDataset {
  std::vector<ExperimentRecord> records;  // ingestion order, never reordered
  std::string source_digest;

  bool empty() const noexcept { return records.empty(); }
  std::size_t size() const noexcept { return records.size(); }
};

// Nominal training compute C = xi * N * D.
inline double training_budget(const ExperimentRecord& r) noexcept {
  return r.xi * r.model_params * r.train_tokens;
}

// FNV-1a over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xF];
    h >>= 4;
  }
  return "fnv1a64:" + std::string(buf, 16);
}

// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, static_cast<std::size_t>(p - buf));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline double parse_field_double(std::string_view field, std::size_t line_no,
                                 std::string_view column) {
  double v = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size())
    fail("row", "line " + std::to_string(line_no) + ": non-numeric value '" +
                    std::string(field) + "' in column '" + std::string(column) +
                    "'");
  return v;
}

inline bool parse_field_bool(std::string_view field, std::size_t line_no) {
  std::string low(field);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "true" || low == "1") return true;
  if (low == "false" || low == "0") return false;
  fail("row", "line " + std::to_string(line_no) + ": column 'augmented' must be "
                  "true/false/1/0, got '" + std::string(field) + "'");
}

inline void check_positive(double v, double min, std::size_t line_no,
                           std::string_view column) {
  if (!(v >= min) || !std::isfinite(v))
    fail("row", "line " + std::to_string(line_no) + ": column '" +
                    std::string(column) + "' must be a finite value >= " +
                    format_double(min) + ", got " + format_double(v));
}

}  // namespace detail

inline constexpr std::array<std::string_view, 8> kCsvColumns = {
    "arch_id",       "model_params", "train_tokens", "xi",
    "test_loss",     "unique_tokens", "augmented",   "wall_time_s"};

// Parses the experiment CSV schema: a header line naming columns (order free),
// then one record per line. The five identity columns are required; the three
// trailing columns are optional and may be absent or empty. Any malformed or
// out-of-domain cell aborts the parse with the offending 1-based line number.
inline ExperimentDataset parse_records(std::string_view text) {
  ExperimentDataset out;
  out.source_digest = fnv1a_hex(text);

  std::size_t pos = 0, line_no = 0;
  std::array<int, 8> col_of;  // schema column -> field index, -1 if absent
  col_of.fill(-1);
  bool have_header = false;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (detail::trim(line).empty()) continue;

    auto fields = detail::split_fields(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        bool known = false;
        for (std::size_t c = 0; c < kCsvColumns.size(); ++c)
          if (fields[i] == kCsvColumns[c]) {
            if (col_of[c] != -1)
              fail("schema", "duplicate column '" + std::string(fields[i]) + "'");
            col_of[c] = static_cast<int>(i);
            known = true;
          }
        if (!known)
          fail("schema", "unknown column '" + std::string(fields[i]) + "'");
      }
      for (std::size_t c = 0; c < 5; ++c)
        if (col_of[c] == -1)
          fail("schema",
               "missing required column '" + std::string(kCsvColumns[c]) + "'");
      have_header = true;
      continue;
    }

    auto field = [&](std::size_t c) -> std::string_view {
      int idx = col_of[c];
      if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return {};
      return fields[static_cast<std::size_t>(idx)];
    };
    std::size_t expected = 0;
    for (int idx : col_of) expected = std::max(expected, static_cast<std::size_t>(idx + 1));
    if (fields.size() != expected)
      fail("row", "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(expected) + " fields, got " +
                      std::to_string(fields.size()));

    ExperimentRecord r;
    r.arch_id = std::string(field(0));
    if (r.arch_id.empty())
      fail("row", "line " + std::to_string(line_no) + ": empty arch_id");
    r.model_params = detail::parse_field_double(field(1), line_no, "model_params");
    detail::check_positive(r.model_params, 1.0, line_no, "model_params");
    r.train_tokens = detail::parse_field_double(field(2), line_no, "train_tokens");
    detail::check_positive(r.train_tokens, 1.0, line_no, "train_tokens");
    r.xi = detail::parse_field_double(field(3), line_no, "xi");
    if (!(r.xi > 0) || !std::isfinite(r.xi))
      fail("row", "line " + std::to_string(line_no) + ": column 'xi' must be > 0");
    r.test_loss = detail::parse_field_double(field(4), line_no, "test_loss");
    if (!(r.test_loss > 0) || !std::isfinite(r.test_loss))
      fail("row",
           "line " + std::to_string(line_no) + ": column 'test_loss' must be > 0");
    if (auto f = field(5); !f.empty()) {
      double v = detail::parse_field_double(f, line_no, "unique_tokens");
      detail::check_positive(v, 1.0, line_no, "unique_tokens");
      r.unique_tokens = v;
    }
    if (auto f = field(6); !f.empty())
      r.augmented = detail::parse_field_bool(f, line_no);
    if (auto f = field(7); !f.empty()) {
      double v = detail::parse_field_double(f, line_no, "wall_time_s");
      if (!(v > 0) || !std::isfinite(v))
        fail("row",
             "line " + std::to_string(line_no) + ": column 'wall_time_s' must be > 0");
      r.wall_time_s = v;
    }
    out.records.push_back(std::move(r));
  }

  if (!have_header) fail("schema", "input has no header line");
  if (out.records.empty()) fail("empty_dataset", "input has no data rows");
  return out;
}

// Canonical serialization: full column header, shortest round-trip floats,
// empty cells for absent optionals, '\n' endings. parse_records(to_csv(d))
// reproduces d.records exactly.
inline std::string to_csv(const ExperimentDataset& ds) {
  std::string out;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (c) out += ',';
    out += kCsvColumns[c];
  }
  out += '\n';
  for (const auto& r : ds.records) {
    out += r.arch_id;
    out += ',';
    out += format_double(r.model_params);
    out += ',';
    out += format_double(r.train_tokens);
    out += ',';
    out += format_double(r.xi);
    out += ',';
    out += format_double(r.test_loss);
    out += ',';
    if (r.unique_tokens) out += format_double(*r.unique_tokens);
    out += ',';
    if (r.augmented) out += *r.augmented ? "true" : "false";
    out += ',';
    if (r.wall_time_s) out += format_double(*r.wall_time_s);
    out += '\n';
  }
  return out;
}

// Subset with a given arch_id, ingestion order preserved. The digest is
// recomputed from the subset's canonical serialization.
inline ExperimentDataset filter_by_arch(const ExperimentDataset& ds,
                                        std::string_view arch_id) {
  ExperimentDataset out;
  for (const auto& r : ds.records)
    if (r.arch_id == arch_id) out.records.push_back(r);
  if (out.records.empty())
    fail("empty_dataset",
         "no records with arch_id '" + std::string(arch_id) + "'");
  out.source_digest = fnv1a_hex(to_csv(out));
  return out;
}

inline std::vector<std::string> arch_ids(const ExperimentDataset& ds) {
  std::vector<std::string> ids;
  for (const auto& r : ds.records)
    if (std::find(ids.begin(), ids.end(), r.arch_id) == ids.end())
      ids.push_back(r.arch_id);
  return ids;
}

}  // namespace scalelaw
