#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ams/util.hpp"

namespace ams {

// 17 significant digits: enough to reproduce any double bit-exactly, so
// regression baselines can be byte-compared.
inline std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path) {
    require(bool(out_), ErrorKind::invalid, "csv: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

 private:
  std::ofstream out_;
};

}  // namespace ams
