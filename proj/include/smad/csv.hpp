#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smad::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(const std::string& field);

void write_row(std::ostream& out, const Row& row);

/// Splits CSV text into rows. Quoted fields may contain commas and doubled quotes.
/// Throws ParseError on an unterminated quote.
std::vector<Row> parse(const std::string& text);

std::string format_double(double value);

} // namespace smad::csv
