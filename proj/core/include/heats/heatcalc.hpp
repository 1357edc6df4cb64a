#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "heats/error.hpp"
#include "heats/tables.hpp"

namespace heats {

/// kW -> Mcal/h factor used for every displayed conversion. The physical
/// value is 0.859845; 0.86 is the rounded factor customary in Romanian
/// heating practice and reproduces the reference outputs.
inline constexpr double kMcalPerKw = 0.86;

struct BuildingSpec {
  std::string city;
  std::string destination;
  long levels = 1;
  double av_ratio = 0.0;        // m²/m³
  double footprint_area = 0.0;  // m²
  double height = 0.0;          // m
};

struct HeatLoad {
  double q_watts = 0.0;
  double q_kw = 0.0;
  double q_mcal = 0.0;  // Mcal/h
  double volume = 0.0;  // m³
  double gn_used = 0.0;
  bool gn_clamped = false;
  double t_inside = 0.0;
  double t_outside = 0.0;

  friend bool operator==(const HeatLoad&, const HeatLoad&) = default;
};

struct GnLookup {
  double gn = 0.0;
  /// True when the ratio fell below the smallest tabulated ratio and the
  /// first row's value was used.
  bool clamped = false;
};

/// Throws UnknownCity.
double lookup_outside_temp(const CityTable& table, std::string_view city);

/// Throws UnknownDestination.
double lookup_inside_temp(const DestinationTable& table, std::string_view destination);

/// Exact on grid ratios, linear between bracketing rows, constant at and
/// above an open upper row, clamped (flagged) below the first row. Above
/// the last row of a group without an open upper row the last value is
/// used and flagged as clamped as well.
///
/// Throws UnknownLevels when the table has no rows for `levels` and
/// NonPositiveDimension when `av_ratio` is not a positive finite number.
GnLookup lookup_gn(const GnTable& table, long levels, double av_ratio);

/// footprint_area × height. Throws NonPositiveDimension.
double compute_volume(double footprint_area, double height);

/// Q = V · GN · (t_inside − t_outside) in watts. The result is negative
/// when t_outside exceeds t_inside. Throws NonPositiveDimension when
/// volume or gn is not positive.
double heat_load(double volume, double gn, double t_inside, double t_outside);

double kw_to_mcal(double kw) noexcept;

/// One rejected BuildingSpec field.
struct FieldIssue {
  ErrorCode code;
  std::string field;
  std::string message;
};

/// Every problem with `spec` against `tables`, in field order. Empty means
/// size_structure will succeed.
std::vector<FieldIssue> check_spec(const BuildingSpec& spec, const Tables& tables);

/// Full sizing pipeline. Throws the error for the first failing field.
HeatLoad size_structure(const BuildingSpec& spec, const Tables& tables);

}  // namespace heats
