#pragma once

#include "quantset/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace quantset {

/// Which CSV columns to ingest. value_columns maps an output series name to a
/// CSV header name; only mapped columns are parsed.
struct CsvSpec {
    std::string date_column = "Date";
    std::vector<std::pair<std::string, std::string>> value_columns;  // {series name, csv header}
    std::string date_format = "%Y-%m-%d";
};

struct CsvLoadResult {
    std::vector<Series> series;  // one per mapped value column, kind = price
    std::size_t rows_total = 0;
    std::size_t rows_dropped = 0;  // rows with any unparseable mapped cell
};

/// Load price columns from a delimited file with a header row. Rows are sorted
/// ascending by parsed date; numbers may carry quotes and thousands separators.
/// Throws input_error for a missing column, duplicate dates or zero parseable
/// rows, io_error when the file cannot be opened.
CsvLoadResult load_csv(const std::string& path, const CsvSpec& spec);

}  // namespace quantset
