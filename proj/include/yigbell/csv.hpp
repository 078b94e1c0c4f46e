#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yigbell {

/// Shortest "%.9g" rendering used by every CSV/JSON data file.
std::string format_number(double value);

void write_csv_row(std::ostream& os, const std::vector<double>& values);
void write_csv_header(std::ostream& os, const std::vector<std::string>& columns);

}  // namespace yigbell
