#pragma once

#include <stdexcept>
#include <string>

namespace qrl {

// Every failure the library reports derives from Error so callers can catch
// one type at the boundary and still distinguish categories below it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad subsystem wiring: unknown label, duplicate label, index out of range,
// dimension mismatch, total dimension over the cap.
struct LayoutError : Error {
    using Error::Error;
};

// Input rejected on mathematical grounds: non-unitary matrix, zero-norm
// factor, degenerate coefficients where the operation needs generic ones.
struct ValidationError : Error {
    using Error::Error;
};

// A numeric result left its tolerance band (non-PSD operator, probabilities
// not summing to one).
struct NumericError : Error {
    using Error::Error;
};

// Parameter recovery could not be completed from the branches at hand.
struct RecoveryError : Error {
    using Error::Error;
};

// Circuit text rejected; line and column are 1-based, column 0 means the
// whole line.
struct ParseError : Error {
    ParseError(int line_, int column_, const std::string& what)
        : Error("line " + std::to_string(line_) +
                (column_ > 0 ? ", column " + std::to_string(column_) : "") + ": " + what),
          line(line_),
          column(column_) {}

    int line;
    int column;
};

}  // namespace qrl
