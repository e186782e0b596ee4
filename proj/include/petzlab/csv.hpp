#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace petzlab {

// Fixed numeric formatting for all emitted tables: 12 significant digits,
// C locale. Output bytes depend only on the values.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string &path) : out_(path) {
    if (!out_)
      throw std::runtime_error("cannot open '" + path + "' for writing");
  }

  void header(const std::vector<std::string> &cols) { raw_row(cols); }

  void row(const std::vector<double> &vals) {
    std::vector<std::string> cells;
    cells.reserve(vals.size());
    for (const double v : vals) cells.push_back(format_number(v));
    raw_row(cells);
  }

  void raw_row(const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream out_;
};

}  // namespace petzlab
