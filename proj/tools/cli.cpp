#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>

#include "heats/api/documents.hpp"
#include "heats/api/server.hpp"
#include "heats/api/service.hpp"
#include "heats/catalog.hpp"
#include "heats/decimal.hpp"
#include "heats/heatcalc.hpp"
#include "heats/tables.hpp"

#ifndef HEATS_DEFAULT_DATA_DIR
#define HEATS_DEFAULT_DATA_DIR "/usr/local/share/heats"
#endif

namespace heats::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDeviceFile = "devices.json";
constexpr const char* kDefaultAddr = "127.0.0.1:8080";

// Raised inside a command to end it with a given exit code.
struct Exit {
  int code;
  std::string message;
};

fs::path resolve_data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HEATS_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return HEATS_DEFAULT_DATA_DIR;
}

double parse_number(const std::string& flag, const std::string& value) {
  auto v = decimal::parse(value);
  if (!v) throw Exit{kExitUsage, flag + ": not a number: '" + value + "'"};
  return *v;
}

Tables load_tables_or_exit(const fs::path& dir) {
  try {
    return load_tables(dir);
  } catch (const Error& e) {
    throw Exit{kExitFailure, e.what()};
  }
}

std::shared_ptr<Catalog> load_catalog_or_exit(const fs::path& dir) {
  auto catalog = std::make_shared<Catalog>();
  try {
    catalog->ingest_file(dir / kDeviceFile);
  } catch (const Error& e) {
    throw Exit{kExitFailure, e.what()};
  }
  return catalog;
}

// Display width of UTF-8 text, counting code points.
std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

template <class E, std::size_t N>
std::string join_set(const EnumSet<E>& set, const E (&all)[N]) {
  std::string out;
  for (E v : all) {
    if (!set.contains(v)) continue;
    if (!out.empty()) out += ", ";
    out += to_string(v);
  }
  return out;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - width(row[i]) + 2, ' ');
    }
    out << line << '\n';
  }
}

struct SizeOptions {
  std::string city;
  std::string destination;
  long levels = 0;
  std::string av_ratio;
  std::string area;
  std::string height;
  bool json = false;
  std::string data_dir;
};

int cmd_size(const SizeOptions& opt, std::ostream& out, std::ostream& err) {
  BuildingSpec spec;
  spec.city = opt.city;
  spec.destination = opt.destination;
  spec.levels = opt.levels;
  spec.av_ratio = parse_number("--av-ratio", opt.av_ratio);
  spec.footprint_area = parse_number("--area", opt.area);
  spec.height = parse_number("--height", opt.height);

  Tables tables = load_tables_or_exit(resolve_data_dir(opt.data_dir));
  auto issues = check_spec(spec, tables);
  if (!issues.empty()) {
    for (const auto& issue : issues) err << "error: " << issue.message << '\n';
    return kExitUsage;
  }
  HeatLoad load = size_structure(spec, tables);
  if (opt.json) {
    out << api::sizing_document(load) << '\n';
  } else {
    out << "Result: " << decimal::round_fixed(load.q_kw, 4) << " kW ("
        << decimal::round_fixed(load.q_mcal, 4) << " MCal)\n";
  }
  if (load.q_watts <= 0.0) {
    err << "warning: no heating required; the outside design temperature is not below the "
           "inside temperature\n";
  }
  return kExitOk;
}

struct DevicesOptions {
  std::string required_kw;
  std::string headroom;
  std::string combustion;
  std::string burner;
  std::string fuel;
  bool json = false;
  std::string data_dir;
};

int cmd_devices(const DevicesOptions& opt, std::ostream& out, std::ostream&) {
  MatchQuery query;
  query.required_power_kw = parse_number("--required-kw", opt.required_kw);
  if (query.required_power_kw <= 0.0) throw Exit{kExitUsage, "--required-kw must be positive"};
  if (!opt.headroom.empty()) {
    query.headroom = parse_number("--headroom", opt.headroom);
    if (query.headroom < 1.0) throw Exit{kExitUsage, "--headroom must be at least 1"};
  }
  auto facet = [](const std::string& flag, const std::string& value, auto parse, auto fallback) {
    if (value.empty()) return fallback;
    auto v = parse(value);
    if (!v) throw Exit{kExitUsage, flag + ": unknown value '" + value + "'"};
    return *v;
  };
  query.criteria.combustion =
      facet("--combustion", opt.combustion, parse_combustion_filter, CombustionFilter::Any);
  query.criteria.burner_type = facet("--burner", opt.burner, parse_burner_filter, BurnerFilter::Any);
  query.criteria.fuel = facet("--fuel", opt.fuel, parse_fuel_filter, FuelFilter::Any);

  auto catalog = load_catalog_or_exit(resolve_data_dir(opt.data_dir));
  auto matched = catalog->match(query);

  if (opt.json) {
    auto page = paginate(matched, 1, std::max<std::size_t>(matched.size(), 1));
    out << api::device_page_document(page, &query) << '\n';
    return kExitOk;
  }
  if (matched.empty()) {
    out << "no matching devices\n";
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows = {
      {"Producer", "Model", "Power (kW)", "Combustion", "Burner", "Fuels"}};
  for (const Device& d : matched) {
    rows.push_back({d.producer, d.model,
                    decimal::round_fixed(d.power_min_kw, 2) + "-" +
                        decimal::round_fixed(d.power_max_kw, 2),
                    join_set(d.combustion, kAllCombustion), std::string(to_string(d.burner_type)),
                    join_set(d.fuels, kAllFuels)});
  }
  print_table(out, rows);
  return kExitOk;
}

int cmd_validate(const std::string& data_dir_flag, std::ostream& out, std::ostream& err) {
  fs::path dir = resolve_data_dir(data_dir_flag);
  if (!fs::is_directory(dir)) {
    err << "error: data directory not found: " << dir.string() << '\n';
    return kExitFailure;
  }

  using Check = std::vector<std::string> (*)(std::istream&, std::string);
  struct File {
    std::string name;
    Check check;
  };
  const File files[] = {
      {std::string(kCitiesFile), &check_city_table},
      {std::string(kDestinationsFile), &check_destination_table},
      {std::string(kGnFile), &check_gn_table},
      {kDeviceFile, nullptr},
  };

  std::size_t ok = 0;
  for (const File& file : files) {
    fs::path path = dir / file.name;
    std::ifstream in(path, std::ios::binary);
    std::vector<std::string> issues;
    if (!in) {
      issues.push_back(file.name + ": cannot open " + path.string());
    } else if (file.check != nullptr) {
      issues = file.check(in, file.name);
    } else {
      std::ostringstream buf;
      buf << in.rdbuf();
      issues = check_device_file(buf.str(), file.name);
    }
    if (issues.empty()) {
      out << file.name << ": OK\n";
      ++ok;
    } else {
      out << file.name << ": " << issues.size() << (issues.size() == 1 ? " error" : " errors")
          << '\n';
      for (const auto& issue : issues) out << "  " << issue << '\n';
    }
  }
  const std::size_t total = std::size(files);
  if (ok == total) {
    out << total << " files OK\n";
    return kExitOk;
  }
  out << (total - ok) << " of " << total << " files invalid\n";
  return kExitFailure;
}

int cmd_serve(const std::string& addr_flag, const std::string& data_dir_flag, std::ostream& out,
              std::ostream& err) {
  std::string addr_text = addr_flag;
  if (addr_text.empty()) {
    const char* env = std::getenv("HEATS_ADDR");
    addr_text = (env != nullptr && *env != '\0') ? env : kDefaultAddr;
  }
  api::ListenAddress address;
  try {
    address = api::ListenAddress::parse(addr_text);
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitUsage, e.what()};
  }

  fs::path dir = resolve_data_dir(data_dir_flag);
  auto tables = std::make_shared<const Tables>(load_tables_or_exit(dir));
  auto catalog = load_catalog_or_exit(dir);
  auto service = std::make_shared<const api::Service>(tables, catalog);

  // Route SIGINT/SIGTERM to a waiter thread; server threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  api::Server server(service);
  int port = 0;
  try {
    port = server.bind(address);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  out << "listening on http://" << address.host << ':' << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // Wake the waiter if run() ended on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heating load sizing and boiler selection"};
  app.name(args.empty() ? "heats" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  SizeOptions size;
  auto* size_cmd = app.add_subcommand("size", "Compute the heating requirement of a structure");
  size_cmd->add_option("--city", size.city, "Locality (design outside temperature)")->required();
  size_cmd->add_option("--destination", size.destination, "Structure destination")->required();
  size_cmd->add_option("--levels", size.levels, "Number of levels")->required();
  size_cmd->add_option("--av-ratio", size.av_ratio, "Surface/volume ratio [m2/m3]")->required();
  size_cmd->add_option("--area", size.area, "Footprint area [m2]")->required();
  size_cmd->add_option("--height", size.height, "Interior height [m]")->required();
  size_cmd->add_flag("--json", size.json, "Print the JSON sizing document");
  size_cmd->add_option("--data-dir", size.data_dir, "Seed data directory");

  DevicesOptions devices;
  auto* devices_cmd = app.add_subcommand("devices", "List catalog devices for a requirement");
  devices_cmd->add_option("--required-kw", devices.required_kw, "Required power [kW]")->required();
  devices_cmd->add_option("--headroom", devices.headroom, "Oversizing cap (default 1.5)");
  devices_cmd->add_option("--combustion", devices.combustion, "Any, Condensing or Burner");
  devices_cmd->add_option("--burner", devices.burner, "Any, Included or External");
  devices_cmd->add_option("--fuel", devices.fuel, "Any, Diesel, CLU3, NaturalGas or LPG");
  devices_cmd->add_flag("--json", devices.json, "Print the JSON device document");
  devices_cmd->add_option("--data-dir", devices.data_dir, "Seed data directory");

  std::string validate_dir;
  auto* validate_cmd = app.add_subcommand("validate", "Check the seed tables and device file");
  validate_cmd->add_option("--data-dir", validate_dir, "Seed data directory");

  std::string serve_addr;
  std::string serve_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--addr", serve_addr, "Listen address host:port");
  serve_cmd->add_option("--data-dir", serve_dir, "Seed data directory");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*size_cmd) return cmd_size(size, out, err);
    if (*devices_cmd) return cmd_devices(devices, out, err);
    if (*validate_cmd) return cmd_validate(validate_dir, out, err);
    if (*serve_cmd) return cmd_serve(serve_addr, serve_dir, out, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace heats::cli
