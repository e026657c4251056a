#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "crlhsim/types.hpp"

namespace crlhsim::csv {

/// Deterministic CSV writer: one header row, full double precision
/// (shortest round-trip via %.17g), UTF-8, '\n' line endings.
class Writer {
public:
    Writer(const std::string& path, const std::vector<std::string>& columns);

    using Value = std::variant<double, int, std::string>;
    void row(const std::vector<Value>& values);

    static std::string format(double v);

private:
    std::ofstream out_;
    size_t n_columns_;
    std::string path_;
};

}  // namespace crlhsim::csv
