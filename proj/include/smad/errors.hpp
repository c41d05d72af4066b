#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace smad {

/// Malformed input document. Carries the 1-based line and column of the
/// offending byte when the position is known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a model invariant (duplicate ids, bad spans, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reference to an entity, class or commit that does not exist.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Raised by training when the dataset cannot support optimization.
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Converts a byte offset into a 1-based (line, column) pair.
std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t offset);

} // namespace smad
