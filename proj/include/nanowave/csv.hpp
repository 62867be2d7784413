#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nanowave {

// Minimal CSV support: comma-separated cells, double-quote quoting with ""
// escapes, LF or CRLF line endings. Blank lines and lines starting with '#'
// (outside quotes) are skipped on read.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

// Quotes a cell only when it contains a comma, quote, or newline.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace nanowave
