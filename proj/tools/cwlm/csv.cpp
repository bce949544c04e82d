#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cwlm/errors.hpp"

namespace cwlm::cli {

std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_joint_csv(const std::filesystem::path& path, const JointDistribution& jd) {
    write_grid_csv(path, jd.o1, jd.o2, jd.values, "p");
}

void write_grid_csv(const std::filesystem::path& path, const std::vector<double>& o1,
                    const std::vector<double>& o2, const std::vector<double>& values,
                    const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "o1,o2," << value_name << "\n";
    for (std::size_t i = 0; i < o1.size(); ++i)
        for (std::size_t j = 0; j < o2.size(); ++j)
            out << format_value(o1[i]) << ',' << format_value(o2[j]) << ','
                << format_value(values[i * o2.size() + j]) << "\n";
}

void write_series_csv(const std::filesystem::path& path, const std::vector<double>& o,
                      const std::vector<double>& p, const std::string& x_name,
                      const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << x_name << ',' << value_name << "\n";
    for (std::size_t i = 0; i < o.size(); ++i)
        out << format_value(o[i]) << ',' << format_value(p[i]) << "\n";
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty csv: " + path.string());
    std::stringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) {
            vals.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
        }
        table.rows.push_back(std::move(vals));
    }
    return table;
}

std::string serialize_table(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_value(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    return out.str();
}

} // namespace cwlm::cli
