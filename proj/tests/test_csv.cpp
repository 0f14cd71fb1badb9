#include "quantset/csv.hpp"

#include "quantset/error.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace quantset;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("quantset_csv_test_" + std::to_string(counter++) + ".csv");
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

CsvSpec close_only() {
    CsvSpec spec;
    spec.value_columns = {{"Close", "Close"}};
    return spec;
}

}  // namespace

TEST_CASE("well-formed file reads back row for row") {
    TempFile f("Date,Open,Close\n"
               "2021-01-04,10,11\n"
               "2021-01-05,11,12\n"
               "2021-01-06,12,13\n"
               "2021-01-07,13,14\n");
    CsvSpec spec;
    spec.value_columns = {{"Open", "Open"}, {"Close", "Close"}};
    const CsvLoadResult res = load_csv(f.path.string(), spec);
    REQUIRE(res.series.size() == 2);
    CHECK(res.rows_total == 4);
    CHECK(res.rows_dropped == 0);
    CHECK(res.series[0].size() == 4);
    CHECK(res.series[1].values == std::vector<double>{11, 12, 13, 14});
    CHECK(res.series[0].kind == SeriesKind::price);
    CHECK(res.series[1].labels.front() == "2021-01-04");
}

TEST_CASE("rows with unparseable cells are dropped and counted") {
    TempFile f("Date,Close\n"
               "2021-01-04,10\n"
               "2021-01-05,N/A\n"
               "2021-01-06,12\n");
    const CsvLoadResult res = load_csv(f.path.string(), close_only());
    CHECK(res.rows_dropped == 1);
    CHECK(res.series[0].values == std::vector<double>{10, 12});
}

TEST_CASE("reverse-ordered rows come back sorted ascending") {
    TempFile f("Date,Close\n"
               "2021-01-06,12\n"
               "2021-01-05,11\n"
               "2021-01-04,10\n");
    const CsvLoadResult res = load_csv(f.path.string(), close_only());
    CHECK(res.series[0].values == std::vector<double>{10, 11, 12});
    CHECK(res.series[0].labels == std::vector<std::string>{"2021-01-04", "2021-01-05", "2021-01-06"});
}

TEST_CASE("quoted fields and thousands separators parse") {
    TempFile f("Date,Close\n"
               "2021-01-04,\"3,823.56\"\n"
               "2021-01-05,\"3,839.06\"\n");
    const CsvLoadResult res = load_csv(f.path.string(), close_only());
    CHECK(res.series[0].values[0] == doctest::Approx(3823.56));
    CHECK(res.series[0].values[1] == doctest::Approx(3839.06));
}

TEST_CASE("alternative date formats") {
    TempFile f("Date,Close\n"
               "01/04/2021,10\n"
               "01/05/2021,11\n");
    CsvSpec spec = close_only();
    spec.date_format = "%m/%d/%Y";
    const CsvLoadResult res = load_csv(f.path.string(), spec);
    CHECK(res.series[0].size() == 2);
}

TEST_CASE("error contracts") {
    CHECK_THROWS_AS(load_csv("/nonexistent/definitely_missing.csv", close_only()), io_error);

    TempFile missing_col("Date,Open\n2021-01-04,10\n");
    CHECK_THROWS_AS(load_csv(missing_col.path.string(), close_only()), input_error);

    TempFile no_rows("Date,Close\nnot-a-date,xx\n");
    CHECK_THROWS_AS(load_csv(no_rows.path.string(), close_only()), input_error);

    TempFile dupes("Date,Close\n2021-01-04,10\n2021-01-04,11\n");
    CHECK_THROWS_AS(load_csv(dupes.path.string(), close_only()), input_error);
}
