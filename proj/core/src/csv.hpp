#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace heats::csv {

struct Record {
  std::size_t line = 0;  // 1-based source line
  std::vector<std::string> fields;
};

// Minimal RFC 4180 reader: comma separated, optional double quotes with ""
// escapes, no embedded newlines. Strips a UTF-8 BOM and CR line endings and
// skips blank lines. Throws ParseError("<source>:<line>", ...).
std::vector<Record> read(std::istream& in, const std::string& source);

}  // namespace heats::csv
