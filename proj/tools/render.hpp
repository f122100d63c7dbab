#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace husts::cli {

enum class Format { Table, Json, Csv };

// An absent value renders as an empty CSV cell, JSON null and "-" in tables.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Record {
  std::vector<std::pair<std::string, Cell>> fields;

  Record& add(std::string key, Cell value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Record& add(std::string key, std::optional<double> value) {
    return value ? add(std::move(key), Cell{*value}) : add(std::move(key), Cell{});
  }
};

// Either a single record (classify, constant, verify) or a header record
// plus rows (compare, sweep).
struct Document {
  Record header;
  std::vector<Record> rows;
  bool tabular = false;
};

// Decimal with 15 significant digits.
std::string format_15(double value);

// Shortest round-trip decimal.
std::string format_shortest(double value);

std::string render(const Document& doc, Format format);

}  // namespace husts::cli
