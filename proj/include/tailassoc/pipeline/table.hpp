#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailassoc {

/// Aligned numeric columns sharing one key column, fully populated.
struct SeriesTable {
    std::string key_column;
    std::vector<std::string> keys;
    std::vector<std::string> columns;
    /// values[c][r]: column c at row r.
    std::vector<std::vector<double>> values;
    /// Free-text note on where the numbers came from (file, transforms).
    std::string provenance;

    std::size_t rows() const noexcept { return keys.size(); }
    /// Throws MissingColumn.
    std::span<const double> column(std::string_view name) const;
};

/// Reads a header-first CSV (RFC 4180 quoting, optional UTF-8 BOM, LF or
/// CRLF) and keeps the rows where every requested value column holds a
/// number. Empty cells and NA/NaN/null count as missing. Rows come back
/// sorted by key, numerically when every key is a number.
///
/// An empty `key_column` selects the first header column. Numbers are parsed
/// with std::from_chars, so the current locale never matters.
SeriesTable load_csv(const std::string& path, const std::string& key_column,
                     const std::vector<std::string>& value_columns);

/// Same as load_csv but from in-memory text; `source` names it in errors.
SeriesTable parse_csv(std::string_view text, const std::string& key_column,
                      const std::vector<std::string>& value_columns, const std::string& source = "<memory>");

/// Splits CSV text into records of fields.
std::vector<std::vector<std::string>> split_csv_records(std::string_view text);

} // namespace tailassoc
