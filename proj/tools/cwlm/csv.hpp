#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cwlm/distribution.hpp"

namespace cwlm::cli {

/// All numeric output uses fixed 9-significant-digit %g formatting, so a
/// written file re-parses and re-serializes byte-identically.
std::string format_value(double v);

void write_joint_csv(const std::filesystem::path& path, const JointDistribution& jd);
void write_grid_csv(const std::filesystem::path& path, const std::vector<double>& o1,
                    const std::vector<double>& o2, const std::vector<double>& values,
                    const std::string& value_name);
void write_series_csv(const std::filesystem::path& path, const std::vector<double>& o,
                      const std::vector<double>& p, const std::string& x_name,
                      const std::string& value_name);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
std::string serialize_table(const CsvTable& table);

} // namespace cwlm::cli
