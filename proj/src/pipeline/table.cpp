#include "tailassoc/pipeline/table.hpp"

#include "tailassoc/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace tailassoc {

std::span<const double> SeriesTable::column(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) return values[c];
    }
    throw Error(ErrorKind::MissingColumn, "column '" + std::string(name) + "' not in table");
}

std::vector<std::vector<std::string>> split_csv_records(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // Blank lines carry no data.
        if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
        case '"':
            if (!field_started && field.empty()) {
                quoted = true;
                field_started = true;
            } else {
                field.push_back(ch);
            }
            break;
        case ',': end_field(); break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            break;
        case '\n': end_record(); break;
        default:
            field.push_back(ch);
            field_started = true;
        }
    }
    if (quoted) throw Error(ErrorKind::UnparsableValue, "unterminated quoted field");
    if (!field.empty() || !record.empty()) end_record();
    return records;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_missing(std::string_view s) {
    return s.empty() || s == "NA" || s == "NaN" || s == "nan" || s == "null" || s == "NULL";
}

std::optional<double> to_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

} // namespace

SeriesTable parse_csv(std::string_view text, const std::string& key_column,
                      const std::vector<std::string>& value_columns, const std::string& source) {
    const auto records = split_csv_records(text);
    require(!records.empty(), ErrorKind::UnparsableValue, source + ": no header row");
    const auto& header = records.front();

    auto find = [&](const std::string& name) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (trim(header[c]) == name) return c;
        }
        throw Error(ErrorKind::MissingColumn, source + ": column '" + name + "' not found in header");
    };
    const std::size_t key_idx = key_column.empty() ? 0 : find(key_column);
    std::vector<std::size_t> value_idx;
    for (const auto& name : value_columns) value_idx.push_back(find(name));

    SeriesTable table;
    table.key_column = std::string(trim(header[key_idx]));
    table.columns = value_columns;
    table.values.resize(value_columns.size());

    std::set<std::string> seen;
    std::vector<std::string> keys;
    std::vector<std::vector<double>> cols(value_columns.size());
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::string line = std::to_string(r + 1);
        require(rec.size() == header.size(), ErrorKind::UnparsableValue,
                source + ": row " + line + " has " + std::to_string(rec.size()) + " fields, header has " +
                    std::to_string(header.size()));
        const std::string key(trim(rec[key_idx]));
        require(!key.empty(), ErrorKind::UnparsableValue, source + ": row " + line + " has an empty key");
        require(seen.insert(key).second, ErrorKind::UnparsableValue,
                source + ": duplicate key '" + key + "' at row " + line);

        std::vector<double> row;
        bool complete = true;
        for (std::size_t c = 0; c < value_idx.size(); ++c) {
            const auto cell = trim(rec[value_idx[c]]);
            if (is_missing(cell)) {
                complete = false;
                continue;
            }
            const auto v = to_number(cell);
            require(v.has_value() && std::isfinite(*v), ErrorKind::UnparsableValue,
                    source + ": row " + line + ", column '" + value_columns[c] + "': cannot parse '" +
                        std::string(cell) + "'");
            row.push_back(*v);
        }
        if (!complete) continue;
        keys.push_back(key);
        for (std::size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
    }
    require(!keys.empty(), ErrorKind::EmptyIntersection,
            source + ": no row has every requested column populated");

    std::vector<std::optional<double>> numeric_keys;
    bool all_numeric = true;
    for (const auto& k : keys) {
        numeric_keys.push_back(to_number(k));
        all_numeric = all_numeric && numeric_keys.back().has_value();
    }
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (all_numeric) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return *numeric_keys[a] < *numeric_keys[b]; });
    } else {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    }

    for (std::size_t i : order) table.keys.push_back(keys[i]);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        table.values[c].reserve(order.size());
        for (std::size_t i : order) table.values[c].push_back(cols[c][i]);
    }
    table.provenance = source;
    return table;
}

SeriesTable load_csv(const std::string& path, const std::string& key_column,
                     const std::vector<std::string>& value_columns) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    require(!in.bad(), ErrorKind::IoError, "read error on '" + path + "'");
    return parse_csv(buffer.str(), key_column, value_columns, path);
}

} // namespace tailassoc
