#pragma once

#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "heats/catalog.hpp"
#include "heats/heatcalc.hpp"
#include "oracle.hpp"

namespace heats::testkit {

using Rng = std::mt19937_64;

template <class Map>
std::string pick_key(Rng& rng, const Map& map) {
  std::uniform_int_distribution<std::size_t> d(0, map.size() - 1);
  auto it = map.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(d(rng)));
  return it->first;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Valid spec over the seed tables. About one ratio in four sits exactly on
/// a tabulated grid point; the rest range below, inside and above the grid.
inline BuildingSpec random_spec(Rng& rng) {
  BuildingSpec spec;
  spec.city = pick_key(rng, oracle::city_temperatures());
  spec.destination = pick_key(rng, oracle::destination_temperatures());
  spec.levels = std::uniform_int_distribution<long>(1, 2)(rng);
  const auto& points = oracle::gn_table().at(spec.levels);
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    spec.av_ratio = points[std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng)].ratio;
  } else {
    spec.av_ratio = uniform(rng, points.front().ratio - 0.3, points.back().ratio + 0.4);
  }
  spec.footprint_area = uniform(rng, 5.0, 2500.0);
  spec.height = uniform(rng, 2.0, 40.0);
  return spec;
}

inline Device random_device(Rng& rng, std::size_t index) {
  Device d;
  d.producer = "P" + std::to_string(std::uniform_int_distribution<int>(0, 4)(rng));
  d.model = "M" + std::to_string(index);
  d.power_min_kw = uniform(rng, 1.0, 80.0);
  d.power_max_kw = d.power_min_kw + uniform(rng, 0.0, 60.0);
  std::bernoulli_distribution coin(0.5);
  do {
    for (Combustion c : kAllCombustion) {
      if (coin(rng)) d.combustion.insert(c);
    }
  } while (d.combustion.empty());
  d.burner_type = kAllBurnerTypes[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
  do {
    for (Fuel f : kAllFuels) {
      if (coin(rng)) d.fuels.insert(f);
    }
  } while (d.fuels.empty());
  d.id = device_id(d.producer, d.model);
  return d;
}

inline std::vector<Device> random_catalog(Rng& rng, std::size_t max_size = 100) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_size)(rng);
  std::vector<Device> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_device(rng, i));
  return out;
}

inline const std::vector<CombustionFilter>& combustion_values() {
  static const std::vector<CombustionFilter> v = {CombustionFilter::Any, CombustionFilter::Condensing,
                                                  CombustionFilter::Burner};
  return v;
}
inline const std::vector<BurnerFilter>& burner_values() {
  static const std::vector<BurnerFilter> v = {BurnerFilter::Any, BurnerFilter::Included,
                                              BurnerFilter::External};
  return v;
}
inline const std::vector<FuelFilter>& fuel_values() {
  static const std::vector<FuelFilter> v = {FuelFilter::Any, FuelFilter::Diesel, FuelFilter::CLU3,
                                            FuelFilter::NaturalGas, FuelFilter::LPG};
  return v;
}

/// Every FilterCriteria combination (3 × 3 × 5).
inline std::vector<FilterCriteria> all_criteria() {
  std::vector<FilterCriteria> out;
  for (auto c : combustion_values())
    for (auto b : burner_values())
      for (auto f : fuel_values()) out.push_back({c, b, f});
  return out;
}

}  // namespace heats::testkit
