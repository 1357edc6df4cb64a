#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace heats {

/// Design outside temperature for a locality (t_e).
struct CityEntry {
  std::string name;
  double design_outside_temp = 0.0;  // °C

  friend bool operator==(const CityEntry&, const CityEntry&) = default;
};

/// Design inside temperature for a structure destination (t_mi).
struct DestinationEntry {
  std::string name;
  double inside_temp = 0.0;  // °C

  friend bool operator==(const DestinationEntry&, const DestinationEntry&) = default;
};

/// One row of the global normalized coefficient table, indexed by the
/// number of levels and the surface/volume ratio. `is_open_upper` marks the
/// "ratio or above" row closing a levels group.
struct GnRow {
  long levels = 0;
  double av_ratio = 0.0;  // m²/m³
  double gn = 0.0;        // W/(m³·K)
  bool is_open_upper = false;

  friend bool operator==(const GnRow&, const GnRow&) = default;
};

/// Immutable name -> temperature table with case-insensitive, trimmed
/// lookup. Entries keep their load order.
template <class Entry>
class NamedTable {
 public:
  NamedTable() = default;

  /// Validates the entries. `lines` (optional, parallel to `entries`) gives
  /// the source line of each entry for error messages.
  NamedTable(std::vector<Entry> entries, std::string source = {},
             std::vector<std::size_t> lines = {});

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// nullptr when absent.
  const Entry* find(std::string_view name) const;

  /// Copy sorted by name (byte order of the UTF-8 text).
  std::vector<Entry> sorted_by_name() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

using CityTable = NamedTable<CityEntry>;
using DestinationTable = NamedTable<DestinationEntry>;

extern template class NamedTable<CityEntry>;
extern template class NamedTable<DestinationEntry>;

class GnTable {
 public:
  GnTable() = default;

  /// Rows in load order. Throws InvariantViolation when a levels group is
  /// not strictly increasing in ratio, decreases in gn, or has an open
  /// upper row that is not its last row.
  GnTable(std::vector<GnRow> rows, std::string source = {},
          std::vector<std::size_t> lines = {});

  const std::vector<GnRow>& rows() const noexcept { return rows_; }

  /// Rows for one levels value in ascending ratio order; empty if none.
  std::span<const GnRow> group(long levels) const;

  /// Distinct levels values, ascending.
  std::vector<long> levels() const;

 private:
  // Sorted by (levels, ratio); groups are contiguous.
  std::vector<GnRow> rows_;
  std::vector<GnRow> by_levels_;
};

/// The three lookup tables the sizing computation needs.
struct Tables {
  CityTable cities;
  DestinationTable destinations;
  GnTable gn;
};

// CSV loaders. `source` names the file in error messages ("gn.csv:7: ...").
// All loaders throw ParseError for malformed content and InvariantViolation
// for rows breaking a table invariant.
CityTable load_city_table(std::istream& in, std::string source = "cities.csv");
DestinationTable load_destination_table(std::istream& in,
                                        std::string source = "destinations.csv");
GnTable load_gn_table(std::istream& in, std::string source = "gn.csv");

CityTable load_city_table(const std::filesystem::path& path);
DestinationTable load_destination_table(const std::filesystem::path& path);
GnTable load_gn_table(const std::filesystem::path& path);

inline constexpr std::string_view kCitiesFile = "cities.csv";
inline constexpr std::string_view kDestinationsFile = "destinations.csv";
inline constexpr std::string_view kGnFile = "gn.csv";

/// Loads cities.csv, destinations.csv and gn.csv from `dir`.
Tables load_tables(const std::filesystem::path& dir);

// Full-file checks: every violation, one located message each, instead of
// stopping at the first. An empty result means the matching loader
// succeeds on the same input.
std::vector<std::string> check_city_table(std::istream& in, std::string source = "cities.csv");
std::vector<std::string> check_destination_table(std::istream& in,
                                                 std::string source = "destinations.csv");
std::vector<std::string> check_gn_table(std::istream& in, std::string source = "gn.csv");

}  // namespace heats
