#include "crlhsim/csv.hpp"

#include <cstdio>

namespace crlhsim::csv {

Writer::Writer(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()), path_(path) {
    if (!out_) throw Error("cannot open output file: " + path);
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

std::string Writer::format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Writer::row(const std::vector<Value>& values) {
    if (values.size() != n_columns_) {
        throw Error("csv row width mismatch in " + path_);
    }
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        if (std::holds_alternative<double>(values[i])) {
            out_ << format(std::get<double>(values[i]));
        } else if (std::holds_alternative<int>(values[i])) {
            out_ << std::get<int>(values[i]);
        } else {
            out_ << std::get<std::string>(values[i]);
        }
    }
    out_ << '\n';
    if (!out_) throw Error("write failure on " + path_);
}

}  // namespace crlhsim::csv
