#include "heats/tables.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "csv.hpp"
#include "heats/decimal.hpp"
#include "heats/error.hpp"
#include "heats/text.hpp"

namespace heats {
namespace {

// Collects messages in check mode; null means throw on the first problem.
using Sink = std::vector<std::string>*;

template <class E>
void report(Sink sink, const E& error) {
  if (sink == nullptr) throw error;
  sink->push_back(error.what());
}

template <class Entry>
struct EntryTraits;

template <>
struct EntryTraits<CityEntry> {
  static constexpr const char* kTempColumn = "design_outside_temp_c";
  static constexpr double kMin = -50.0;
  static constexpr double kMax = 20.0;
  static double& temperature(CityEntry& e) { return e.design_outside_temp; }
};

template <>
struct EntryTraits<DestinationEntry> {
  static constexpr const char* kTempColumn = "inside_temp_c";
  static constexpr double kMin = 0.0;
  static constexpr double kMax = 40.0;
  static double& temperature(DestinationEntry& e) { return e.inside_temp; }
};

std::string locate(const std::string& source, const std::vector<std::size_t>& lines,
                   std::size_t index) {
  std::string name = source.empty() ? "table" : source;
  if (index < lines.size()) return name + ":" + std::to_string(lines[index]);
  return name + ": row " + std::to_string(index + 1);
}

std::string format_number(double v) {
  return std::isfinite(v) ? decimal::round_trimmed(v, 6) : std::string("non-finite");
}

// Trims names in place and checks every entry.
template <class Entry>
void validate_named(std::vector<Entry>& entries, const std::string& source,
                    const std::vector<std::size_t>& lines, Sink sink) {
  using Traits = EntryTraits<Entry>;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Entry& e = entries[i];
    const std::string where = locate(source, lines, i);
    e.name = std::string(text::trim(e.name));
    if (e.name.empty()) report(sink, InvariantViolation(where, "name", "must not be empty"));
    double t = Traits::temperature(e);
    if (!std::isfinite(t) || t < Traits::kMin || t > Traits::kMax) {
      report(sink, InvariantViolation(where, Traits::kTempColumn,
                                      format_number(t) + " outside [" +
                                          format_number(Traits::kMin) + ", " +
                                          format_number(Traits::kMax) + "]"));
    }
    if (!e.name.empty() && !seen.insert(text::match_key(e.name)).second) {
      report(sink, InvariantViolation(where, "name", "duplicate name '" + e.name + "'"));
    }
  }
}

void validate_gn(const std::vector<GnRow>& rows, const std::string& source,
                 const std::vector<std::size_t>& lines, Sink sink) {
  // Last row seen per levels value, as an index into rows.
  std::vector<std::pair<long, std::size_t>> last;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const GnRow& row = rows[i];
    const std::string where = locate(source, lines, i);
    const std::string group = " within levels=" + std::to_string(row.levels);
    if (row.levels < 1) {
      report(sink, InvariantViolation(where, "levels", "must be a positive integer"));
    }
    if (!std::isfinite(row.av_ratio) || row.av_ratio <= 0.0) {
      report(sink, InvariantViolation(where, "av_ratio", "must be positive"));
    }
    if (!std::isfinite(row.gn) || row.gn <= 0.0) {
      report(sink, InvariantViolation(where, "gn", "must be positive"));
    }
    auto prev = std::find_if(last.begin(), last.end(),
                             [&](const auto& p) { return p.first == row.levels; });
    if (prev == last.end()) {
      last.emplace_back(row.levels, i);
      continue;
    }
    const GnRow& before = rows[prev->second];
    if (before.is_open_upper) {
      report(sink, InvariantViolation(where, "open_upper",
                                      "row follows the open upper row" + group));
    }
    if (row.av_ratio <= before.av_ratio) {
      report(sink, InvariantViolation(where, "av_ratio",
                                      format_number(row.av_ratio) + " does not increase over " +
                                          format_number(before.av_ratio) + group));
    }
    if (row.gn < before.gn) {
      report(sink, InvariantViolation(where, "gn",
                                      format_number(row.gn) + " decreases from " +
                                          format_number(before.gn) + group));
    }
    prev->second = i;
  }
}

bool check_header(const std::vector<csv::Record>& records, const std::string& source,
                  const std::vector<std::string>& columns, Sink sink) {
  if (records.empty()) {
    report(sink, ParseError(source + ":1", "missing header"));
    return false;
  }
  const auto& header = records.front();
  bool ok = header.fields.size() == columns.size();
  for (std::size_t i = 0; ok && i < columns.size(); ++i) {
    ok = text::trim(header.fields[i]) == columns[i];
  }
  if (!ok) {
    std::string expected;
    for (const auto& c : columns) expected += (expected.empty() ? "" : ",") + c;
    report(sink, ParseError(source + ":" + std::to_string(header.line),
                            "expected header '" + expected + "'"));
  }
  return ok;
}

void expect_width(const csv::Record& r, std::size_t width, const std::string& where) {
  if (r.fields.size() != width) {
    throw ParseError(where, "expected " + std::to_string(width) + " fields, found " +
                                std::to_string(r.fields.size()));
  }
}

double number_field(const std::string& raw, const std::string& where, const std::string& column) {
  auto v = decimal::parse(text::trim(raw));
  if (!v) throw ParseError(where, "column '" + column + "': not a number: '" + raw + "'", column);
  return *v;
}

std::vector<csv::Record> read_records(std::istream& in, const std::string& source, Sink sink) {
  try {
    return csv::read(in, source);
  } catch (const ParseError& e) {
    report(sink, e);
    return {};
  }
}

// Parsed rows plus their source lines. Rows that fail to parse are
// reported and skipped.
template <class Row>
struct Parsed {
  std::vector<Row> rows;
  std::vector<std::size_t> lines;
  bool ok = true;
};

template <class Entry>
Parsed<Entry> parse_named(std::istream& in, const std::string& source, Sink sink) {
  using Traits = EntryTraits<Entry>;
  Parsed<Entry> out;
  auto records = read_records(in, source, sink);
  if (!check_header(records, source, {"name", Traits::kTempColumn}, sink)) {
    out.ok = false;
    return out;
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string where = source + ":" + std::to_string(r.line);
    try {
      expect_width(r, 2, where);
      Entry e;
      e.name = r.fields[0];
      Traits::temperature(e) = number_field(r.fields[1], where, Traits::kTempColumn);
      out.rows.push_back(std::move(e));
      out.lines.push_back(r.line);
    } catch (const ParseError& e) {
      report(sink, e);
    }
  }
  return out;
}

Parsed<GnRow> parse_gn(std::istream& in, const std::string& source, Sink sink) {
  Parsed<GnRow> out;
  auto records = read_records(in, source, sink);
  if (!check_header(records, source, {"levels", "av_ratio", "gn", "open_upper"}, sink)) {
    out.ok = false;
    return out;
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string where = source + ":" + std::to_string(r.line);
    try {
      expect_width(r, 4, where);
      GnRow row;
      auto levels = decimal::parse_integer(text::trim(r.fields[0]));
      if (!levels) {
        throw ParseError(where, "column 'levels': not an integer: '" + r.fields[0] + "'", "levels");
      }
      row.levels = *levels;
      row.av_ratio = number_field(r.fields[1], where, "av_ratio");
      row.gn = number_field(r.fields[2], where, "gn");
      auto flag = text::trim(r.fields[3]);
      if (flag == "true") {
        row.is_open_upper = true;
      } else if (flag != "false") {
        throw ParseError(where, "column 'open_upper': expected true or false", "open_upper");
      }
      out.rows.push_back(row);
      out.lines.push_back(r.line);
    } catch (const ParseError& e) {
      report(sink, e);
    }
  }
  return out;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace

template <class Entry>
NamedTable<Entry>::NamedTable(std::vector<Entry> entries, std::string source,
                              std::vector<std::size_t> lines)
    : entries_(std::move(entries)) {
  validate_named(entries_, source, lines, nullptr);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(text::match_key(entries_[i].name), i);
  }
}

template <class Entry>
const Entry* NamedTable<Entry>::find(std::string_view name) const {
  auto it = index_.find(text::match_key(name));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

template <class Entry>
std::vector<Entry> NamedTable<Entry>::sorted_by_name() const {
  std::vector<Entry> out = entries_;
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });
  return out;
}

template class NamedTable<CityEntry>;
template class NamedTable<DestinationEntry>;

GnTable::GnTable(std::vector<GnRow> rows, std::string source, std::vector<std::size_t> lines)
    : rows_(std::move(rows)) {
  validate_gn(rows_, source, lines, nullptr);
  by_levels_ = rows_;
  std::stable_sort(by_levels_.begin(), by_levels_.end(),
                   [](const GnRow& a, const GnRow& b) { return a.levels < b.levels; });
}

std::span<const GnRow> GnTable::group(long levels) const {
  auto lo = std::partition_point(by_levels_.begin(), by_levels_.end(),
                                 [&](const GnRow& r) { return r.levels < levels; });
  auto hi = std::partition_point(lo, by_levels_.end(),
                                 [&](const GnRow& r) { return r.levels == levels; });
  return {lo, hi};
}

std::vector<long> GnTable::levels() const {
  std::vector<long> out;
  for (const GnRow& row : by_levels_) {
    if (out.empty() || out.back() != row.levels) out.push_back(row.levels);
  }
  return out;
}

CityTable load_city_table(std::istream& in, std::string source) {
  auto parsed = parse_named<CityEntry>(in, source, nullptr);
  return CityTable(std::move(parsed.rows), std::move(source), std::move(parsed.lines));
}

DestinationTable load_destination_table(std::istream& in, std::string source) {
  auto parsed = parse_named<DestinationEntry>(in, source, nullptr);
  return DestinationTable(std::move(parsed.rows), std::move(source), std::move(parsed.lines));
}

GnTable load_gn_table(std::istream& in, std::string source) {
  auto parsed = parse_gn(in, source, nullptr);
  return GnTable(std::move(parsed.rows), std::move(source), std::move(parsed.lines));
}

CityTable load_city_table(const std::filesystem::path& path) {
  auto in = open(path);
  return load_city_table(in, path.filename().string());
}

DestinationTable load_destination_table(const std::filesystem::path& path) {
  auto in = open(path);
  return load_destination_table(in, path.filename().string());
}

GnTable load_gn_table(const std::filesystem::path& path) {
  auto in = open(path);
  return load_gn_table(in, path.filename().string());
}

Tables load_tables(const std::filesystem::path& dir) {
  return Tables{load_city_table(dir / kCitiesFile),
                load_destination_table(dir / kDestinationsFile), load_gn_table(dir / kGnFile)};
}

std::vector<std::string> check_city_table(std::istream& in, std::string source) {
  std::vector<std::string> issues;
  auto parsed = parse_named<CityEntry>(in, source, &issues);
  if (parsed.ok) validate_named(parsed.rows, source, parsed.lines, &issues);
  return issues;
}

std::vector<std::string> check_destination_table(std::istream& in, std::string source) {
  std::vector<std::string> issues;
  auto parsed = parse_named<DestinationEntry>(in, source, &issues);
  if (parsed.ok) validate_named(parsed.rows, source, parsed.lines, &issues);
  return issues;
}

std::vector<std::string> check_gn_table(std::istream& in, std::string source) {
  std::vector<std::string> issues;
  auto parsed = parse_gn(in, source, &issues);
  if (parsed.ok) validate_gn(parsed.rows, source, parsed.lines, &issues);
  return issues;
}

}  // namespace heats
