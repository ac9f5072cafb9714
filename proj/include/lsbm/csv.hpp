#pragma once

#include <string>
#include <vector>

namespace lsbm {

/// Shortest exact decimal form of a double (17 significant digits max),
/// locale-independent; re-parses bit-exactly.
std::string format_double(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

/// Header row plus one line per record, comma separated, '\n' endings.
void export_csv(const CsvTable& table, const std::string& path);

std::string to_csv_string(const CsvTable& table);

/// Minimal reader for the score files `scan` writes and `roc` ingests:
/// returns the values of the named column.
std::vector<double> read_csv_column(const std::string& path, const std::string& column);

}  // namespace lsbm
