#include "csv.hpp"

#include <istream>

#include "heats/error.hpp"
#include "heats/text.hpp"

namespace heats::csv {
namespace {

std::vector<std::string> split(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      if (!text::trim(field).empty() || was_quoted) {
        throw ParseError(where, "unexpected quote inside field");
      }
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError(where, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<Record> read(std::istream& in, const std::string& source) {
  std::vector<Record> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    records.push_back({number, split(line, source + ":" + std::to_string(number))});
  }
  return records;
}

}  // namespace heats::csv
