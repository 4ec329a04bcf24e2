#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace epm::csv {

/// Shortest round-trip-safe text for a double: 17 significant digits, "inf"/"-inf"/"nan".
std::string number(double v);

/// Quotes a field when it contains a comma, quote or newline.
std::string field(std::string_view s);

/// Writes one record, '\n'-terminated. Fields must already be formatted.
void write_row(std::ostream &os, const std::vector<std::string> &fields);

} // namespace epm::csv
