#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hoselm {

// Dimension mismatch between operands.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data violates a precondition (non-finite entries, empty lists, bad labels).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configuration value is out of its allowed range.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A classifier node whose activation collapses to zero carries no information.
struct DegenerateNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not available in the model's training mode.
struct ModeError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ")"),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

// Structurally malformed input file (ragged rows, bad header, unknown version).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hoselm
