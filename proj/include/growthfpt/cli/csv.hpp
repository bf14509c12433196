#pragma once

// Column-oriented CSV output: header row, 17 significant digits, first
// column strictly increasing.

#include <string>
#include <vector>

#include "growthfpt/errors.hpp"

namespace growthfpt::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add(std::string name, std::vector<double> values) {
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
  }
};

std::string format_number(double v);

/// Serialize; throws GridError on ragged columns or a non-increasing first column.
std::string to_csv(const Table& t);

void write_text(const std::string& path, const std::string& text);

}  // namespace growthfpt::cli
