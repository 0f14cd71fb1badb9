#include "quantset/arma.hpp"
#include "quantset/rng.hpp"
#include "quantset/serialize.hpp"
#include "support/simulate.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef QUANTSET_CLI_PATH
#error "QUANTSET_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "quantset_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QUANTSET_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir))
        out[entry.path().filename().string()] = slurp(entry.path());
    return out;
}

// price fixture: GARCH-driven index levels
fs::path price_fixture() {
    static fs::path path;
    if (!path.empty()) return path;
    path = scratch_dir() / "prices.csv";
    quantset::Rng rng(8888);
    const std::vector<double> u = sim::garch(rng, 700, 2e-6, 0.08, 0.88);
    std::ofstream out(path);
    out << "Date,Close\n";
    double close = 3500.0;
    int y = 2018, m = 1, d = 1;
    char buf[64];
    for (double r : u) {
        if (++d > 28) { d = 1; ++m; }
        if (m > 12) { m = 1; ++y; }
        close *= std::exp(r + 0.0002);
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d,%.6f\n", y, m, d, close);
        out << buf;
    }
    return path;
}

// four-column fixture with a planted Open -> Close link
fs::path ohlc_fixture() {
    static fs::path path;
    if (!path.empty()) return path;
    path = scratch_dir() / "ohlc.csv";
    quantset::Rng rng(9999);
    const auto cols = sim::var1(rng, 600,
                                {{0.6, 0.25, 0.0, 0.0},
                                 {0.0, 0.55, 0.0, 0.0},
                                 {0.1, 0.0, 0.5, 0.0},
                                 {0.0, 0.1, 0.0, 0.5}},
                                {100.0, 110.0, 120.0, 130.0}, 1.0);
    std::ofstream out(path);
    out << "Date,Open,High,Low,Close\n";
    int y = 2018, m = 1, d = 1;
    char buf[160];
    for (std::size_t t = 0; t < cols[0].size(); ++t) {
        if (++d > 28) { d = 1; ++m; }
        if (m > 12) { m = 1; ++y; }
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d,%.6f,%.6f,%.6f,%.6f\n", y, m, d,
                      cols[1][t], cols[2][t], cols[3][t], cols[0][t]);
        out << buf;
    }
    return path;
}

void check_deterministic(const std::string& base_args, const std::string& name) {
    const fs::path dir_a = scratch_dir() / (name + "_a");
    const fs::path dir_b = scratch_dir() / (name + "_b");
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    REQUIRE(run_cli(base_args + " --out " + dir_a.string()) == 0);
    REQUIRE(run_cli(base_args + " --out " + dir_b.string()) == 0);
    const auto a = dir_contents(dir_a);
    const auto b = dir_contents(dir_b);
    REQUIRE(!a.empty());
    REQUIRE(a.size() == b.size());
    for (const auto& [file, bytes] : a) {
        INFO("file: " << file);
        REQUIRE(b.count(file) == 1);
        CHECK(bytes == b.at(file));
    }
}

}  // namespace

TEST_CASE("describe runs and is byte-identical across runs") {
    const std::string args = "describe --input " + price_fixture().string() +
                             " --format text,json,csv,svg --seed 42";
    check_deterministic(args, "describe");
}

TEST_CASE("arma command is deterministic") {
    const std::string args =
        "arma --input " + price_fixture().string() + " --p 0 --q 1 --horizon 7 --seed 42";
    check_deterministic(args, "arma");
}

TEST_CASE("garch command is deterministic") {
    const std::string args =
        "garch --input " + price_fixture().string() + " --p 0 --q 0 --horizon 7 --seed 42";
    check_deterministic(args, "garch");
}

TEST_CASE("egarch variant is deterministic") {
    const std::string args = "garch --input " + price_fixture().string() +
                             " --p 0 --q 0 --model egarch --horizon 7 --seed 42";
    check_deterministic(args, "egarch");
}

TEST_CASE("risk command is deterministic and reproduces the published table") {
    check_deterministic("risk --mu 0.0011 --sigma 0.0125 --seed 42", "risk");

    const fs::path dir = scratch_dir() / "risk_values";
    fs::remove_all(dir);
    REQUIRE(run_cli("risk --mu 0.0011 --sigma 0.0125 --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "risk.csv");
    CHECK(csv.find("0.95,0.02166") != std::string::npos);
    CHECK(csv.find("0.99,0.03018") != std::string::npos);
}

TEST_CASE("var command is deterministic") {
    const std::string args =
        "var --input " + ohlc_fixture().string() + " --var-lag 1 --horizon 5 --seed 42";
    check_deterministic(args, "var");
}

TEST_CASE("var finds the planted causal direction") {
    const fs::path dir = scratch_dir() / "var_causal";
    fs::remove_all(dir);
    REQUIRE(run_cli("var --input " + ohlc_fixture().string() + " --out " + dir.string()) == 0);
    const std::string granger = slurp(dir / "granger.csv");
    // Open -> Close has a planted 0.25 loading; the reverse link is absent
    CHECK(granger.find("Open,Close") != std::string::npos);
    std::istringstream in(granger);
    std::string line;
    bool planted_significant = false, reverse_insignificant = false;
    while (std::getline(in, line)) {
        if (line.rfind("Open,Close,", 0) == 0 && line.find("***") != std::string::npos)
            planted_significant = true;
        if (line.rfind("Close,Open,", 0) == 0) {
            const auto last_comma = line.find_last_of(',');
            reverse_insignificant = last_comma == line.size() - 1;  // no stars
        }
    }
    CHECK(planted_significant);
    CHECK(reverse_insignificant);

    // every FEVD row sums to 100
    const std::string fevd_csv = slurp(dir / "fevd.csv");
    std::istringstream fin(fevd_csv);
    std::getline(fin, line);  // header
    while (std::getline(fin, line)) {
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 7);
        const double sum = std::stod(cells[3]) + std::stod(cells[4]) + std::stod(cells[5]) +
                           std::stod(cells[6]);
        CHECK(sum == doctest::Approx(100.0).epsilon(1e-9));
    }
}

TEST_CASE("exit codes distinguish failure classes") {
    CHECK(run_cli("describe --input /nonexistent/never.csv") == 4);
    CHECK(run_cli("risk") == 2);                          // missing mu/sigma source
    CHECK(run_cli("risk --mu 0.1 --sigma -0.5") == 2);    // invalid sigma
    CHECK(run_cli("unknown-subcommand") == 2);
    const fs::path dir = scratch_dir() / "missing_col";
    fs::remove_all(dir);
    CHECK(run_cli("describe --input " + ohlc_fixture().string() +
                  " --close-col NoSuchColumn --out " + dir.string()) == 2);
}

TEST_CASE("risk accepts a serialized fit as its parameter source") {
    const fs::path dir = scratch_dir() / "risk_from_fit";
    fs::remove_all(dir);
    REQUIRE(run_cli("garch --input " + price_fixture().string() + " --p 0 --q 0 --out " +
                    dir.string()) == 0);
    const fs::path fit_file = dir / "garch_fit.json";
    REQUIRE(fs::exists(fit_file));
    CHECK(run_cli("risk --fit " + fit_file.string() + " --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "risk.csv"));
}

TEST_CASE("serialized fits round trip through files byte for byte") {
    const fs::path dir = scratch_dir() / "roundtrip";
    fs::remove_all(dir);
    REQUIRE(run_cli("arma --input " + price_fixture().string() + " --p 1 --q 0 --out " +
                    dir.string()) == 0);
    const std::string bytes = slurp(dir / "arma_fit.json");
    const quantset::ArmaFit fit = quantset::arma_fit_from_json(bytes);
    CHECK(quantset::to_json(fit) == bytes);
}
