#pragma once

#include <string>
#include <vector>

#include "fpsum/experiments.hpp"

namespace fpsum {

// Minimal self-contained line chart: relative errors and bound values versus
// n, log10 y axis, one polyline per algorithm/bound series. A pure function
// of the rows; undefined cells and exact-zero errors are skipped.
std::string render_chart_svg(const std::vector<ResultRow>& rows, const std::string& title);

}  // namespace fpsum
