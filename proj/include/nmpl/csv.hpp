#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "nmpl/common.hpp"

namespace nmpl {

// Numbers are written with 17 significant digits so re-reads round-trip.
std::string csv_num(double v);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void row(const std::vector<std::string>& cells);
    void close() { out_.close(); }

  private:
    std::ofstream out_;
};

}  // namespace nmpl
