#include "lsbm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsbm {

std::string format_double(double value) {
    char buf[40];
    // shortest representation that round-trips
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == value) return buf;
    }
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw std::invalid_argument("CsvTable: row width != header width");
    rows.push_back(std::move(cells));
}

std::string to_csv_string(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

void export_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    const std::string text = to_csv_string(table);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("csv: write failed: " + path);
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::size_t target = std::string::npos;
    {
        std::stringstream header(line);
        std::string cell;
        for (std::size_t i = 0; std::getline(header, cell, ','); ++i)
            if (cell == column) target = i;
    }
    if (target == std::string::npos)
        throw std::runtime_error("csv: no '" + column + "' column in " + path);

    std::vector<double> values;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        bool found = false;
        for (std::size_t i = 0; std::getline(row, cell, ','); ++i) {
            if (i == target) {
                std::size_t pos = 0;
                values.push_back(std::stod(cell, &pos));
                found = true;
            }
        }
        if (!found) throw std::runtime_error("csv: short row in " + path);
    }
    return values;
}

}  // namespace lsbm
