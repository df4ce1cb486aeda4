#include "nmpl/csv.hpp"

#include <cstdio>

namespace nmpl {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw NumericalError("cannot open output file '" + path + "'");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace nmpl
