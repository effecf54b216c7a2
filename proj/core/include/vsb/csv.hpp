#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vsb {

// RFC-4180-style CSV, enough for our dataset/report files. InChI values
// contain commas, so quoting is required, not optional.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(std::istream& in, char sep = ',');
CsvTable read_csv_file(const std::string& path, char sep = ',');
std::string csv_escape(const std::string& field, char sep = ',');
void write_csv(std::ostream& out, const CsvTable& table, char sep = ',');
void write_csv_file(const std::string& path, const CsvTable& table,
                    char sep = ',');

// Splits one raw CSV line (no newline handling); helper for streaming reads.
std::vector<std::string> split_csv_line(const std::string& line,
                                        char sep = ',');

}  // namespace vsb
