#include "smad/errors.hpp"

#include <algorithm>

namespace smad {

namespace {

std::string with_position(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) {
        return message;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(with_position(message, line, column)), line_(line), column_(column) {}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace smad
