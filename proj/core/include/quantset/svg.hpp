#pragma once

#include <string>
#include <vector>

namespace quantset::svg {

struct LineSeries {
    std::string name;
    std::vector<double> y;
};

/// Minimal self-contained SVG line chart, fixed 800x400 viewport, index on the
/// x axis. Output is deterministic for identical inputs.
std::string line_chart(const std::string& title, const std::vector<LineSeries>& series);

}  // namespace quantset::svg
