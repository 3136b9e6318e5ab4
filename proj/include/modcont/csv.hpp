#pragma once

#include <string>
#include <vector>

namespace modcont {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// RFC-4180-style numeric CSV: comma separated, '.' decimal separator, one
// optional header row.  Throws DomainError on malformed numeric cells.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace modcont
