#include "transrel/stat_table.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "transrel/error.hpp"

namespace transrel {

std::size_t StatTable::column_index(const std::string& label) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].label == label) return c;
  }
  throw Error("NO_SUCH_COLUMN", "table " + name + " has no column '" + label + "'");
}

const StatRow* StatTable::find_row(const std::string& label) const {
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const StatRow& r) { return r.label == label; });
  return it == rows.end() ? nullptr : &*it;
}

std::optional<double> StatTable::value(const std::string& row,
                                       const std::string& column) const {
  const StatRow* r = find_row(row);
  if (!r) return std::nullopt;
  return r->values.at(column_index(column));
}

std::string StatTable::cell_text(std::size_t row, std::size_t column) const {
  const auto& v = rows.at(row).values.at(column);
  if (!v) return {};
  if (columns.at(column).kind == ColumnKind::count) {
    return fmt::format("{}", static_cast<long long>(std::llround(*v)));
  }
  return format_fixed(*v, decimals);
}

double round_half_up(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::abs(value) * scale;
  const double floor = std::floor(scaled);
  const double tolerance = 1e-9 * std::max(1.0, scaled);
  const double magnitude = (scaled - floor + tolerance >= 0.5) ? floor + 1.0 : floor;
  if (magnitude == 0.0) return 0.0;
  return std::copysign(magnitude, value) / scale;
}

std::string format_fixed(double value, int decimals) {
  return fmt::format("{:.{}f}", round_half_up(value, decimals), decimals);
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::csv;
  if (text == "tsv") return TableFormat::tsv;
  if (text == "jsonl" || text == "json-lines") return TableFormat::jsonl;
  throw Error("BAD_FORMAT", "'" + std::string(text) + "' is not csv|tsv|jsonl");
}

std::string_view file_extension(TableFormat format) noexcept {
  switch (format) {
    case TableFormat::tsv:
      return "tsv";
    case TableFormat::jsonl:
      return "jsonl";
    default:
      return "csv";
  }
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string tsv_field(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; },
                  ' ');
  return s;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string export_table(const StatTable& table, TableFormat format,
                         const OutputMetadata& metadata) {
  std::string out;
  if (format == TableFormat::jsonl) {
    if (!metadata.empty()) {
      out += "{\"_meta\":{";
      for (std::size_t i = 0; i < metadata.size(); ++i) {
        if (i > 0) out += ',';
        out += json_string(metadata[i].first) + ':' + json_string(metadata[i].second);
      }
      out += "}}\n";
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out += '{' + json_string(table.row_header) + ':' + json_string(table.rows[r].label);
      for (std::size_t k = 0; k < table.key_columns.size(); ++k) {
        out += ',' + json_string(table.key_columns[k]) + ':' + json_string(table.rows[r].keys.at(k));
      }
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const std::string cell = table.cell_text(r, c);
        out += ',' + json_string(table.columns[c].label) + ':' + (cell.empty() ? "null" : cell);
      }
      out += "}\n";
    }
    return out;
  }

  const bool csv = format == TableFormat::csv;
  const char sep = csv ? ',' : '\t';
  const auto field = [&](const std::string& s) { return csv ? csv_field(s) : tsv_field(s); };
  for (const auto& [key, value] : metadata) {
    out += "# " + key + "=" + value + "\n";
  }
  out += field(table.row_header);
  for (const auto& key : table.key_columns) out += sep + field(key);
  for (const auto& col : table.columns) out += sep + field(col.label);
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += field(table.rows[r].label);
    for (std::size_t k = 0; k < table.key_columns.size(); ++k) {
      out += sep + field(table.rows[r].keys.at(k));
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out += sep + field(table.cell_text(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace transrel
