#include "growthfpt/cli/csv.hpp"

#include <cstdio>
#include <fstream>

namespace growthfpt::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  if (t.columns.empty() || t.header.size() != t.columns.size()) fail(Errc::GridError, "table header and columns differ");
  const std::size_t rows = t.columns.front().size();
  for (const auto& c : t.columns)
    if (c.size() != rows) fail(Errc::GridError, "table columns differ in length");
  const auto& first = t.columns.front();
  for (std::size_t i = 1; i < rows; ++i)
    if (!(first[i] > first[i - 1])) fail(Errc::GridError, "first column must be strictly increasing");

  std::string out;
  for (std::size_t j = 0; j < t.header.size(); ++j) out += (j ? "," : "") + t.header[j];
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (j) out += ',';
      out += format_number(t.columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::ConfigError, "cannot write " + path);
  f << text;
  if (!f) fail(Errc::ConfigError, "failed writing " + path);
}

}  // namespace growthfpt::cli
