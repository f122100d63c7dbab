#include "render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace husts::cli {

std::string format_15(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string format_shortest(double value) {
  if (!std::isfinite(value)) return format_15(value);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string text(const Cell& cell, bool shortest) {
  return std::visit(
      [shortest](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return shortest ? format_shortest(v) : format_15(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          // Round through the 15-digit text so the dump carries at most 15
          // significant digits.
          return std::strtod(format_15(v).c_str(), nullptr);
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::ordered_json to_json(const Record& record) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : record.fields) obj[key] = to_json(value);
  return obj;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_line(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(cells[i]);
  }
  out << '\n';
}

std::string render_json(const Document& doc) {
  nlohmann::ordered_json root = to_json(doc.header);
  if (doc.tabular) {
    root["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) root["rows"].push_back(to_json(row));
  }
  return root.dump(2) + "\n";
}

std::string render_csv(const Document& doc) {
  std::ostringstream out;
  const std::vector<Record> single{doc.header};
  const auto& records = doc.tabular ? doc.rows : single;
  if (records.empty()) return "";
  std::vector<std::string> header;
  for (const auto& field : records.front().fields) header.push_back(field.first);
  csv_line(out, header);
  for (const auto& record : records) {
    std::vector<std::string> cells;
    for (const auto& field : record.fields) cells.push_back(text(field.second, false));
    csv_line(out, cells);
  }
  return out.str();
}

std::string render_table(const Document& doc) {
  std::ostringstream out;
  std::size_t key_width = 0;
  for (const auto& field : doc.header.fields) key_width = std::max(key_width, field.first.size());
  for (const auto& [key, value] : doc.header.fields) {
    const std::string v = text(value, true);
    out << key << std::string(key_width - key.size() + 2, ' ') << (v.empty() ? "-" : v) << '\n';
  }
  if (!doc.tabular || doc.rows.empty()) return out.str();

  out << '\n';
  const auto& columns = doc.rows.front().fields;
  std::vector<std::size_t> width(columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].first.size();
  for (const auto& row : doc.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < row.fields.size(); ++c) {
      std::string v = text(row.fields[c].second, true);
      if (v.empty()) v = "-";
      if (c < width.size()) width[c] = std::max(width[c], v.size());
      line.push_back(std::move(v));
    }
  }
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      out << line[c];
      if (c + 1 < line.size()) out << std::string(width[c] - line[c].size(), ' ');
    }
    out << '\n';
  };
  std::vector<std::string> header;
  for (const auto& column : columns) header.push_back(column.first);
  emit(header);
  for (const auto& line : cells) emit(line);
  return out.str();
}

}  // namespace

std::string render(const Document& doc, Format format) {
  switch (format) {
    case Format::Json: return render_json(doc);
    case Format::Csv: return render_csv(doc);
    case Format::Table: return render_table(doc);
  }
  return {};
}

}  // namespace husts::cli
