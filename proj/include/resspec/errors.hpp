#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resspec {

// The spectral matrix (or one of its leading covariate blocks) is numerically
// singular at a grid node, so the decomposition formulas are undefined there.
class singular_spectrum_error : public std::runtime_error {
public:
    singular_spectrum_error(const std::string& what, std::size_t node)
        : std::runtime_error(what + " (grid node " + std::to_string(node) + ")"),
          node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

// Input series unusable for spectral estimation (e.g. zero variance).
class singular_input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An analytically-real quantity exceeded its imaginary-residue budget, or a
// nonnegative integral evaluated nonpositive. Indicates a broken precondition
// or numerics bug, not bad user input.
class internal_consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed input file; carries a 1-based row/column location where known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : std::runtime_error(location_prefix(row, column) + what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string location_prefix(std::size_t row, std::size_t column) {
        if (row == 0) return {};
        std::string p = "row " + std::to_string(row);
        if (column != 0) p += ", column " + std::to_string(column);
        return p + ": ";
    }

    std::size_t row_;
    std::size_t column_;
};

}  // namespace resspec
