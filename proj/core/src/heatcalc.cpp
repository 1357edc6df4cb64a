#include "heats/heatcalc.hpp"

#include <algorithm>
#include <cmath>

#include "heats/decimal.hpp"

namespace heats {
namespace {

bool positive(double v) noexcept { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const char* field) {
  if (!positive(v)) {
    throw NonPositiveDimension(
        field, std::string(field) + " must be a positive number, got " +
                   (std::isfinite(v) ? decimal::round_trimmed(v, 6) : std::string("non-finite")));
  }
}

}  // namespace

double lookup_outside_temp(const CityTable& table, std::string_view city) {
  const CityEntry* entry = table.find(city);
  if (entry == nullptr) throw UnknownCity(std::string(city));
  return entry->design_outside_temp;
}

double lookup_inside_temp(const DestinationTable& table, std::string_view destination) {
  const DestinationEntry* entry = table.find(destination);
  if (entry == nullptr) throw UnknownDestination(std::string(destination));
  return entry->inside_temp;
}

GnLookup lookup_gn(const GnTable& table, long levels, double av_ratio) {
  std::span<const GnRow> rows = table.group(levels);
  if (rows.empty()) throw UnknownLevels(levels);
  require_positive(av_ratio, "av_ratio");

  const GnRow& first = rows.front();
  const GnRow& last = rows.back();
  if (av_ratio < first.av_ratio) return {first.gn, true};
  if (av_ratio >= last.av_ratio) {
    bool beyond = av_ratio > last.av_ratio && !last.is_open_upper;
    return {last.gn, beyond};
  }

  auto upper = std::lower_bound(rows.begin(), rows.end(), av_ratio,
                                [](const GnRow& r, double x) { return r.av_ratio < x; });
  if (upper->av_ratio == av_ratio) return {upper->gn, false};
  auto lower = std::prev(upper);
  double t = (av_ratio - lower->av_ratio) / (upper->av_ratio - lower->av_ratio);
  return {lower->gn + (upper->gn - lower->gn) * t, false};
}

double compute_volume(double footprint_area, double height) {
  require_positive(footprint_area, "footprint_area");
  require_positive(height, "height");
  return footprint_area * height;
}

double heat_load(double volume, double gn, double t_inside, double t_outside) {
  require_positive(volume, "volume");
  require_positive(gn, "gn");
  return volume * gn * (t_inside - t_outside);
}

double kw_to_mcal(double kw) noexcept { return kw * kMcalPerKw; }

std::vector<FieldIssue> check_spec(const BuildingSpec& spec, const Tables& tables) {
  std::vector<FieldIssue> issues;
  auto attempt = [&](auto&& step) {
    try {
      step();
    } catch (const Error& e) {
      issues.push_back({e.code(), e.field(), e.what()});
    }
  };
  attempt([&] { lookup_outside_temp(tables.cities, spec.city); });
  attempt([&] { lookup_inside_temp(tables.destinations, spec.destination); });
  if (tables.gn.group(spec.levels).empty()) {
    issues.push_back({ErrorCode::UnknownLevels, "levels", UnknownLevels(spec.levels).what()});
  }
  attempt([&] { require_positive(spec.av_ratio, "av_ratio"); });
  attempt([&] { require_positive(spec.footprint_area, "footprint_area"); });
  attempt([&] { require_positive(spec.height, "height"); });
  return issues;
}

HeatLoad size_structure(const BuildingSpec& spec, const Tables& tables) {
  HeatLoad load;
  load.t_outside = lookup_outside_temp(tables.cities, spec.city);
  load.t_inside = lookup_inside_temp(tables.destinations, spec.destination);
  GnLookup gn = lookup_gn(tables.gn, spec.levels, spec.av_ratio);
  load.gn_used = gn.gn;
  load.gn_clamped = gn.clamped;
  load.volume = compute_volume(spec.footprint_area, spec.height);
  load.q_watts = heat_load(load.volume, load.gn_used, load.t_inside, load.t_outside);
  load.q_kw = load.q_watts / 1000.0;
  load.q_mcal = kw_to_mcal(load.q_kw);
  return load;
}

}  // namespace heats
