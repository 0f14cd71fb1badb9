#include "quantset/csv.hpp"

#include "quantset/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace quantset {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"') {
            if (in_quotes && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else {
                in_quotes = !in_quotes;
            }
        } else if (c == ',' && !in_quotes) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Sortable integer key from a date string, or nullopt-style failure via bool.
bool parse_date_key(const std::string& text, const std::string& format, std::int64_t* key) {
    std::tm tm = {};
    std::istringstream in(trim(text));
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) return false;
    in >> std::ws;
    if (!in.eof()) return false;
    *key = ((static_cast<std::int64_t>(tm.tm_year) * 13 + tm.tm_mon) * 32 + tm.tm_mday) * 86400 +
           tm.tm_hour * 3600 + tm.tm_min * 60 + tm.tm_sec;
    return true;
}

bool parse_number(const std::string& raw, double* out) {
    std::string cleaned;
    cleaned.reserve(raw.size());
    for (char c : raw) {
        if (c == ',' || c == '"' || c == ' ' || c == '\t') continue;
        cleaned.push_back(c);
    }
    if (cleaned.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(cleaned.c_str(), &end);
    if (end == nullptr || *end != '\0') return false;
    if (!std::isfinite(v)) return false;
    *out = v;
    return true;
}

}  // namespace

CsvLoadResult load_csv(const std::string& path, const CsvSpec& spec) {
    std::ifstream in(path);
    if (!in.is_open()) throw io_error("cannot open file: " + path);
    if (spec.value_columns.empty()) throw input_error("load_csv: no value columns mapped");

    std::string line;
    if (!std::getline(in, line)) throw input_error("load_csv: empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> headers = split_csv_line(line);
    for (auto& h : headers) h = trim(h);

    auto column_index = [&](const std::string& name) {
        const auto it = std::find(headers.begin(), headers.end(), name);
        if (it == headers.end())
            throw input_error("load_csv: column '" + name + "' not found in " + path);
        return static_cast<std::size_t>(it - headers.begin());
    };

    const std::size_t date_idx = column_index(spec.date_column);
    std::vector<std::size_t> value_idx;
    for (const auto& [series_name, csv_name] : spec.value_columns) {
        (void)series_name;
        value_idx.push_back(column_index(csv_name));
    }

    struct Row {
        std::int64_t key;
        std::string label;
        std::vector<double> values;
    };
    std::vector<Row> rows;
    CsvLoadResult result;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++result.rows_total;

        const std::vector<std::string> fields = split_csv_line(line);
        const std::size_t needed =
            std::max(date_idx, *std::max_element(value_idx.begin(), value_idx.end()));
        if (fields.size() <= needed) {
            ++result.rows_dropped;
            continue;
        }

        Row row;
        row.label = trim(fields[date_idx]);
        if (!parse_date_key(row.label, spec.date_format, &row.key)) {
            ++result.rows_dropped;
            continue;
        }
        bool ok = true;
        row.values.resize(value_idx.size());
        for (std::size_t j = 0; j < value_idx.size(); ++j) {
            if (!parse_number(fields[value_idx[j]], &row.values[j])) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++result.rows_dropped;
            continue;
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw input_error("load_csv: no parseable rows in " + path);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.key < b.key; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].key == rows[i - 1].key)
            throw input_error("load_csv: duplicate date '" + rows[i].label + "' in " + path);
    }

    result.series.resize(spec.value_columns.size());
    for (std::size_t j = 0; j < spec.value_columns.size(); ++j) {
        Series& s = result.series[j];
        s.name = spec.value_columns[j].first;
        s.kind = SeriesKind::price;
        s.values.reserve(rows.size());
        s.labels.reserve(rows.size());
        for (const Row& row : rows) {
            s.values.push_back(row.values[j]);
            s.labels.push_back(row.label);
        }
        validate_series(s);
    }
    return result;
}

}  // namespace quantset
