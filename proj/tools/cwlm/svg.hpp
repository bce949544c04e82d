#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cwlm::cli {

/// Standalone SVG renderers; plotting never gates numeric outputs.

void write_heatmap_svg(const std::filesystem::path& path, const std::vector<double>& o1,
                       const std::vector<double>& o2, const std::vector<double>& values,
                       const std::string& title, bool symmetric_scale = false);

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_lines_svg(const std::filesystem::path& path, const std::vector<LineSeries>& series,
                     const std::string& title);

} // namespace cwlm::cli
