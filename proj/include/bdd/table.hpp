#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bdd {

enum class OutputFormat { Csv, Jsonl };

/// Deterministic float formatting; no locale, '.' decimal point.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

using Cell = std::variant<std::int64_t, double, std::string>;

/// Plot-ready table emitter. CSV output carries a '#'-prefixed metadata
/// block followed by one header line; JSONL emits a meta record first,
/// then one object per row. Identical (meta, rows) produce identical
/// bytes.
class TableWriter {
public:
  TableWriter(std::ostream& os, OutputFormat format, std::vector<std::string> columns,
              const std::vector<std::pair<std::string, std::string>>& meta)
      : os_(os), format_(format), columns_(std::move(columns)) {
    if (format_ == OutputFormat::Csv) {
      for (const auto& [k, v] : meta) os_ << "# " << k << ": " << v << "\n";
      for (std::size_t i = 0; i < columns_.size(); ++i)
        os_ << (i ? "," : "") << columns_[i];
      os_ << "\n";
    } else {
      nlohmann::json j;
      for (const auto& [k, v] : meta) j["meta"][k] = v;
      os_ << j.dump() << "\n";
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (format_ == OutputFormat::Csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ",";
        os_ << cell_text(cells[i]);
      }
      os_ << "\n";
    } else {
      nlohmann::json j;
      for (std::size_t i = 0; i < cells.size() && i < columns_.size(); ++i) {
        std::visit([&](const auto& v) { j[columns_[i]] = v; }, cells[i]);
      }
      os_ << j.dump() << "\n";
    }
  }

  /// Trailing annotation (e.g. a per-curve argmax).
  void note(const std::string& key, const std::string& value) {
    if (format_ == OutputFormat::Csv) {
      os_ << "# " << key << ": " << value << "\n";
    } else {
      nlohmann::json j;
      j["note"][key] = value;
      os_ << j.dump() << "\n";
    }
  }

private:
  static std::string cell_text(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    return std::get<std::string>(c);
  }

  std::ostream& os_;
  OutputFormat format_;
  std::vector<std::string> columns_;
};

/// FNV-1a over the canonical resolved-config string; embedded in every
/// output header so tables are traceable to their inputs.
inline std::uint64_t config_hash(
    const std::vector<std::pair<std::string, std::string>>& meta) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : meta) {
    for (unsigned char ch : k) h = (h ^ ch) * 0x100000001b3ULL;
    h = (h ^ '=') * 0x100000001b3ULL;
    for (unsigned char ch : v) h = (h ^ ch) * 0x100000001b3ULL;
    h = (h ^ ';') * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace bdd
