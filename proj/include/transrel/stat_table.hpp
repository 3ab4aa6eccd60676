#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace transrel {

enum class ColumnKind { count, real };

struct Column {
  std::string label;
  ColumnKind kind = ColumnKind::count;
};

struct StatRow {
  std::string label;
  std::vector<std::optional<double>> values;  // nullopt prints as an empty cell
  std::vector<std::string> keys;              // one per StatTable::key_columns
};

/// Labeled table of counts and real values. Values are stored unrounded;
/// real columns are rounded half-up to `decimals` places when formatted.
struct StatTable {
  std::string name;
  std::string provenance;
  std::string row_header = "label";
  std::vector<std::string> key_columns;  // text columns printed after the label
  std::vector<Column> columns;
  std::vector<StatRow> rows;
  int decimals = 3;
  std::vector<std::string> notes;

  std::size_t column_index(const std::string& label) const;  // throws NO_SUCH_COLUMN
  const StatRow* find_row(const std::string& label) const;
  std::optional<double> value(const std::string& row, const std::string& column) const;
  std::string cell_text(std::size_t row, std::size_t column) const;
};

/// Rounds half away from zero, absorbing binary representation error at the
/// tie (2.0005 rounds to 2.001 at 3 places).
double round_half_up(double value, int decimals);

std::string format_fixed(double value, int decimals);

enum class TableFormat { csv, tsv, jsonl };

TableFormat parse_table_format(std::string_view text);
std::string_view file_extension(TableFormat format) noexcept;

/// Reproduction metadata written ahead of the table body.
using OutputMetadata = std::vector<std::pair<std::string, std::string>>;

/// CSV follows RFC 4180 quoting with '\n' line ends; TSV replaces tabs and
/// newlines inside cells with spaces; JSON lines emit one object per row with
/// numbers formatted exactly as in CSV. Metadata becomes "# key=value" lines
/// (CSV/TSV) or a leading {"_meta":{...}} object (JSON lines).
std::string export_table(const StatTable& table, TableFormat format,
                         const OutputMetadata& metadata = {});

}  // namespace transrel
