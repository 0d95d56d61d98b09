#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hyprelax {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// One polyline of an SVG plot.
struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
};

/// Fixed-viewport line plot; a convenience artifact, CSV is the contract.
void write_svg_plot(const std::filesystem::path& path,
                    const std::vector<SvgSeries>& series);

}  // namespace hyprelax
