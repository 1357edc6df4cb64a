#include <benchmark/benchmark.h>

#include <random>

#include "heats/catalog.hpp"
#include "heats/heatcalc.hpp"
#include "heats/tables.hpp"

namespace {

const heats::Tables& seed() {
  static const heats::Tables tables = heats::load_tables(HEATS_SEED_DIR);
  return tables;
}

void BM_SizeStructure(benchmark::State& state) {
  heats::BuildingSpec spec{"Brașov", "Rooms and lobbies", 1, 0.83, 100.0, 3.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(heats::size_structure(spec, seed()));
  }
}
BENCHMARK(BM_SizeStructure);

void BM_LookupGn(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ratio(0.5, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heats::lookup_gn(seed().gn, 1, ratio(rng)));
  }
}
BENCHMARK(BM_LookupGn);

std::vector<heats::Device> synthetic_catalog(std::size_t n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> power(1.0, 500.0);
  std::vector<heats::Device> devices;
  for (std::size_t i = 0; i < n; ++i) {
    heats::Device d;
    d.producer = "P" + std::to_string(i % 17);
    d.model = "M" + std::to_string(i);
    d.id = heats::device_id(d.producer, d.model);
    d.power_min_kw = power(rng);
    d.power_max_kw = d.power_min_kw * 1.5;
    d.combustion = {i % 2 ? heats::Combustion::Burner : heats::Combustion::Condensing};
    d.burner_type = heats::kAllBurnerTypes[i % 3];
    d.fuels = {heats::kAllFuels[i % 6]};
    devices.push_back(std::move(d));
  }
  return devices;
}

void BM_MatchDevices(benchmark::State& state) {
  auto devices = synthetic_catalog(static_cast<std::size_t>(state.range(0)));
  heats::MatchQuery query;
  query.required_power_kw = 120.0;
  query.criteria.fuel = heats::FuelFilter::NaturalGas;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heats::match_devices(devices, query));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchDevices)->Range(16, 16384);

}  // namespace

BENCHMARK_MAIN();
