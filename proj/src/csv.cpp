#include "nanowave/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "nanowave/errors.hpp"

namespace nanowave {

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool row_has_data = false;

  auto end_cell = [&] {
    row.push_back(cell);
    cell.clear();
  };
  auto end_row = [&] {
    if (row_has_data || row.size() > 1 || !cell.empty()) {
      end_cell();
      // Skip comment rows: first cell starts with '#'.
      if (!(row.size() >= 1 && !row[0].empty() && row[0][0] == '#')) rows.push_back(row);
    }
    row.clear();
    cell.clear();
    row_has_data = false;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell += '"';
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_data = true;
        break;
      case ',':
        end_cell();
        row_has_data = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        cell += c;
        row_has_data = true;
        break;
    }
  }
  end_row();
  return rows;
}

std::vector<std::vector<std::string>> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  return read_csv(in);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    const std::string& s = cells[i];
    bool quote = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!quote) {
      out << s;
      continue;
    }
    out << '"';
    for (char c : s) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

}  // namespace nanowave
