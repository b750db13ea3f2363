#pragma once

#include <stdexcept>
#include <string>

namespace sparsecond {

/// Thrown when an operation requires a nonsingular matrix and the input is
/// (structurally or numerically) singular.
class singular_error : public std::runtime_error {
public:
    explicit singular_error(const std::string& what, int column = -1)
        : std::runtime_error(what), column_(column) {}

    /// Pivot column that was found entirely zero, or -1 if not applicable.
    int column() const noexcept { return column_; }

private:
    int column_;
};

/// Thrown when a random-ensemble experiment is requested on a pattern whose
/// structural rank is below n: every sample is singular and the experiment
/// is vacuous.
class vacuous_pattern_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed pattern/matrix/vector files; carries the 1-based line.
class file_parse_error : public std::runtime_error {
public:
    file_parse_error(const std::string& what, long line)
        : std::runtime_error(what), line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

}  // namespace sparsecond
