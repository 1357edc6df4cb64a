#include "heats/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "device_json.hpp"
#include "heats/decimal.hpp"
#include "heats/error.hpp"
#include "heats/text.hpp"

namespace heats {

std::string_view to_string(Combustion v) noexcept {
  switch (v) {
    case Combustion::Condensing: return "Condensing";
    case Combustion::Burner: return "Burner";
  }
  return {};
}

std::string_view to_string(BurnerType v) noexcept {
  switch (v) {
    case BurnerType::Included: return "Included";
    case BurnerType::External: return "External";
    case BurnerType::Unspecified: return "Unspecified";
  }
  return {};
}

std::string_view to_string(Fuel v) noexcept {
  switch (v) {
    case Fuel::Diesel: return "Diesel";
    case Fuel::CLU3: return "CLU3";
    case Fuel::NaturalGas: return "NaturalGas";
    case Fuel::LPG: return "LPG";
    case Fuel::Wood: return "Wood";
    case Fuel::Sawdust: return "Sawdust";
  }
  return {};
}

namespace {

template <class E, std::size_t N>
std::optional<E> parse_exact(std::string_view s, const E (&all)[N]) noexcept {
  for (E v : all) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

template <class E>
std::optional<E> parse_alias(std::string_view s,
                             std::initializer_list<std::pair<std::string_view, E>> aliases) {
  std::string key = text::match_key(s);
  for (const auto& [alias, value] : aliases) {
    if (key == alias) return value;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Combustion> parse_combustion(std::string_view s) noexcept {
  return parse_exact(s, kAllCombustion);
}

std::optional<BurnerType> parse_burner_type(std::string_view s) noexcept {
  return parse_exact(s, kAllBurnerTypes);
}

std::optional<Fuel> parse_fuel(std::string_view s) noexcept { return parse_exact(s, kAllFuels); }

std::string_view to_string(CombustionFilter v) noexcept {
  switch (v) {
    case CombustionFilter::Any: return "Any";
    case CombustionFilter::Condensing: return "Condensing";
    case CombustionFilter::Burner: return "Burner";
  }
  return {};
}

std::string_view to_string(BurnerFilter v) noexcept {
  switch (v) {
    case BurnerFilter::Any: return "Any";
    case BurnerFilter::Included: return "Included";
    case BurnerFilter::External: return "External";
  }
  return {};
}

std::string_view to_string(FuelFilter v) noexcept {
  switch (v) {
    case FuelFilter::Any: return "Any";
    case FuelFilter::Diesel: return "Diesel";
    case FuelFilter::CLU3: return "CLU3";
    case FuelFilter::NaturalGas: return "NaturalGas";
    case FuelFilter::LPG: return "LPG";
  }
  return {};
}

std::optional<CombustionFilter> parse_combustion_filter(std::string_view s) {
  using F = CombustionFilter;
  return parse_alias<F>(s, {{"any", F::Any},
                            {"indiferent", F::Any},
                            {"condensing", F::Condensing},
                            {"condensatie", F::Condensing},
                            {"in condensatie", F::Condensing},
                            {"burner", F::Burner},
                            {"arzator", F::Burner},
                            {"cu arzator", F::Burner}});
}

std::optional<BurnerFilter> parse_burner_filter(std::string_view s) {
  using F = BurnerFilter;
  return parse_alias<F>(s, {{"any", F::Any},
                            {"indiferent", F::Any},
                            {"included", F::Included},
                            {"inclus", F::Included},
                            {"external", F::External},
                            {"exterior", F::External}});
}

std::optional<FuelFilter> parse_fuel_filter(std::string_view s) {
  using F = FuelFilter;
  return parse_alias<F>(s, {{"any", F::Any},
                            {"indiferent", F::Any},
                            {"diesel", F::Diesel},
                            {"motorina", F::Diesel},
                            {"clu3", F::CLU3},
                            {"naturalgas", F::NaturalGas},
                            {"natural gas", F::NaturalGas},
                            {"gaz", F::NaturalGas},
                            {"gaze naturale", F::NaturalGas},
                            {"lpg", F::LPG},
                            {"gpl", F::LPG}});
}

bool FilterCriteria::matches(const Device& device) const noexcept {
  switch (combustion) {
    case CombustionFilter::Any: break;
    case CombustionFilter::Condensing:
      if (!device.combustion.contains(Combustion::Condensing)) return false;
      break;
    case CombustionFilter::Burner:
      if (!device.combustion.contains(Combustion::Burner)) return false;
      break;
  }
  switch (burner_type) {
    case BurnerFilter::Any: break;
    case BurnerFilter::Included:
      if (device.burner_type != BurnerType::Included) return false;
      break;
    case BurnerFilter::External:
      if (device.burner_type != BurnerType::External) return false;
      break;
  }
  switch (fuel) {
    case FuelFilter::Any: return true;
    case FuelFilter::Diesel: return device.fuels.contains(Fuel::Diesel);
    case FuelFilter::CLU3: return device.fuels.contains(Fuel::CLU3);
    case FuelFilter::NaturalGas: return device.fuels.contains(Fuel::NaturalGas);
    case FuelFilter::LPG: return device.fuels.contains(Fuel::LPG);
  }
  return true;
}

std::string device_id(std::string_view producer, std::string_view model) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&](unsigned char c) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  };
  for (char c : producer) mix(static_cast<unsigned char>(c));
  mix(0);
  for (char c : model) mix(static_cast<unsigned char>(c));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void validate_device(const Device& d, const std::string& where) {
  if (text::trim(d.producer).empty()) throw InvariantViolation(where, "producer", "must not be empty");
  if (text::trim(d.model).empty()) throw InvariantViolation(where, "model", "must not be empty");
  if (!std::isfinite(d.power_min_kw) || d.power_min_kw <= 0.0) {
    throw InvariantViolation(where, "power_min_kw", "must be positive");
  }
  if (!std::isfinite(d.power_max_kw) || d.power_max_kw < d.power_min_kw) {
    throw InvariantViolation(where, "power_max_kw",
                             decimal::round_trimmed(d.power_max_kw, 6) +
                                 " is below power_min_kw " +
                                 decimal::round_trimmed(d.power_min_kw, 6));
  }
  if (d.combustion.empty()) throw InvariantViolation(where, "combustion", "must not be empty");
  if (d.fuels.empty()) throw InvariantViolation(where, "fuels", "must not be empty");
  if (d.image_ref) {
    if (d.image_ref->empty() || d.image_ref->find_first_of("/\\") != std::string::npos) {
      throw InvariantViolation(where, "image_ref", "must be a plain file name");
    }
  }
}

void validate_query(const MatchQuery& query) {
  if (!std::isfinite(query.required_power_kw) || query.required_power_kw <= 0.0) {
    throw NonPositiveDimension("required_kw", "required power must be positive");
  }
  if (!std::isfinite(query.headroom) || query.headroom < 1.0) {
    throw NonPositiveDimension("headroom", "headroom must be at least 1");
  }
}

bool listing_less(const Device& a, const Device& b) noexcept {
  return std::tie(a.producer, a.model) < std::tie(b.producer, b.model);
}

std::vector<Device> match_devices(std::span<const Device> devices, const MatchQuery& query) {
  validate_query(query);
  const double cap = query.headroom * query.required_power_kw;
  std::vector<Device> out;
  for (const Device& d : devices) {
    if (d.power_max_kw >= query.required_power_kw && d.power_min_kw <= cap &&
        query.criteria.matches(d)) {
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end(), [](const Device& a, const Device& b) {
    if (a.power_max_kw != b.power_max_kw) return a.power_max_kw < b.power_max_kw;
    return listing_less(a, b);
  });
  return out;
}

DevicePage paginate(std::span<const Device> devices, std::size_t page, std::size_t page_size) {
  DevicePage result;
  result.page = page;
  result.page_size = page_size;
  result.total = devices.size();
  if (page == 0 || page_size == 0) return result;
  // Guard the multiplication for absurd page numbers.
  if (page - 1 > devices.size() / page_size) return result;
  std::size_t begin = (page - 1) * page_size;
  if (begin >= devices.size()) return result;
  std::size_t end = std::min(devices.size(), begin + page_size);
  result.devices.assign(devices.begin() + static_cast<std::ptrdiff_t>(begin),
                        devices.begin() + static_cast<std::ptrdiff_t>(end));
  return result;
}

namespace detail {

nlohmann::ordered_json device_record(const Device& d) {
  nlohmann::ordered_json j;
  j["producer"] = d.producer;
  j["model"] = d.model;
  j["power_min_kw"] = d.power_min_kw;
  j["power_max_kw"] = d.power_max_kw;
  auto combustion = nlohmann::ordered_json::array();
  for (Combustion c : kAllCombustion) {
    if (d.combustion.contains(c)) combustion.push_back(to_string(c));
  }
  j["combustion"] = std::move(combustion);
  j["burner_type"] = to_string(d.burner_type);
  auto fuels = nlohmann::ordered_json::array();
  for (Fuel f : kAllFuels) {
    if (d.fuels.contains(f)) fuels.push_back(to_string(f));
  }
  j["fuels"] = std::move(fuels);
  if (d.description) j["description"] = *d.description;
  if (d.image_ref) j["image_ref"] = *d.image_ref;
  return j;
}

nlohmann::ordered_json device_resource(const Device& d) {
  nlohmann::ordered_json j;
  j["id"] = d.id;
  const auto record = device_record(d);
  for (const auto& [key, value] : record.items()) j[key] = value;
  return j;
}

}  // namespace detail

namespace {

using Json = nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Source line of each element of the top-level array. Assumes `text` is
// valid JSON.
std::vector<std::size_t> element_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false;
  bool expect_element = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    if (depth == 1 && expect_element && c != ']') {
      lines.push_back(line);
      expect_element = false;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '[':
      case '{':
        ++depth;
        if (depth == 1) expect_element = true;
        break;
      case ']':
      case '}':
        --depth;
        if (depth == 1) expect_element = false;
        break;
      case ',':
        if (depth == 1) expect_element = true;
        break;
      default: break;
    }
  }
  return lines;
}

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "producer", "model", "power_min_kw", "power_max_kw", "combustion",
      "burner_type", "fuels", "description", "image_ref"};
  return fields;
}

const Json& require(const Json& record, const char* field, const std::string& where) {
  auto it = record.find(field);
  if (it == record.end()) throw ParseError(where, std::string("missing field '") + field + "'", field);
  return *it;
}

std::string string_field(const Json& record, const char* field, const std::string& where) {
  const Json& v = require(record, field, where);
  if (!v.is_string()) throw ParseError(where, std::string("field '") + field + "' must be a string", field);
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& record, const char* field,
                                           const std::string& where) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(where, std::string("field '") + field + "' must be a string", field);
  return it->get<std::string>();
}

double number_field(const Json& record, const char* field, const std::string& where) {
  const Json& v = require(record, field, where);
  if (!v.is_number()) throw ParseError(where, std::string("field '") + field + "' must be a number", field);
  return v.get<double>();
}

template <class E, class Parse>
EnumSet<E> set_field(const Json& record, const char* field, const std::string& where, Parse parse) {
  const Json& v = require(record, field, where);
  if (!v.is_array()) throw ParseError(where, std::string("field '") + field + "' must be an array", field);
  EnumSet<E> out;
  for (const Json& item : v) {
    if (!item.is_string()) {
      throw ParseError(where, std::string("field '") + field + "' must contain strings", field);
    }
    auto parsed = parse(item.get<std::string>());
    if (!parsed) {
      throw ParseError(where, std::string("field '") + field + "': unknown value '" +
                                  item.get<std::string>() + "'", field);
    }
    if (out.contains(*parsed)) {
      throw InvariantViolation(where, field, "duplicate value '" + item.get<std::string>() + "'");
    }
    out.insert(*parsed);
  }
  return out;
}

Device parse_record(const Json& record, const std::string& where) {
  if (!record.is_object()) throw ParseError(where, "record must be a JSON object");
  for (const auto& [key, value] : record.items()) {
    if (!known_fields().contains(key)) throw ParseError(where, "unknown field '" + key + "'", key);
  }
  Device d;
  d.producer = std::string(text::trim(string_field(record, "producer", where)));
  d.model = std::string(text::trim(string_field(record, "model", where)));
  d.power_min_kw = number_field(record, "power_min_kw", where);
  d.power_max_kw = number_field(record, "power_max_kw", where);
  d.combustion = set_field<Combustion>(record, "combustion", where, parse_combustion);
  auto burner = record.find("burner_type");
  if (burner != record.end() && !burner->is_null()) {
    if (!burner->is_string()) throw ParseError(where, "field 'burner_type' must be a string", "burner_type");
    auto parsed = parse_burner_type(burner->get<std::string>());
    if (!parsed) {
      throw ParseError(where, "field 'burner_type': unknown value '" + burner->get<std::string>() + "'",
                       "burner_type");
    }
    d.burner_type = *parsed;
  }
  d.fuels = set_field<Fuel>(record, "fuels", where, parse_fuel);
  d.description = optional_string(record, "description", where);
  d.image_ref = optional_string(record, "image_ref", where);
  return d;
}

using Sink = std::vector<std::string>*;

template <class E>
void report(Sink sink, const E& error) {
  if (sink == nullptr) throw error;
  sink->push_back(error.what());
}

// Validates, assigns ids and rejects duplicates. `where(i)` locates record i.
template <class Where>
void finalize(std::vector<Device>& devices, Where where, Sink sink = nullptr) {
  std::map<std::pair<std::string, std::string>, std::size_t> keys;
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    Device& d = devices[i];
    try {
      validate_device(d, where(i));
    } catch (const InvariantViolation& e) {
      report(sink, e);
    }
    d.id = device_id(d.producer, d.model);
    if (!keys.emplace(std::pair{d.producer, d.model}, i).second ||
        !ids.emplace(d.id, i).second) {
      report(sink, DuplicateDevice(where(i), d.producer, d.model));
    }
  }
}

std::vector<Device> parse_devices(std::string_view text, const std::string& source, Sink sink) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    report(sink, ParseError(source + ":" + std::to_string(line_of(text, offset)), "invalid JSON"));
    return {};
  }
  if (!doc.is_array()) {
    report(sink, ParseError(source + ":1", "expected a JSON array of device records"));
    return {};
  }

  const auto lines = element_lines(text);
  auto where = [&](std::size_t i) {
    std::string w = source;
    if (i < lines.size()) w += ":" + std::to_string(lines[i]);
    return w + ": record " + std::to_string(i + 1);
  };

  std::vector<Device> devices;
  std::vector<std::size_t> positions;  // record index of each parsed device
  devices.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      devices.push_back(parse_record(doc[i], where(i)));
      positions.push_back(i);
    } catch (const Error& e) {
      if (sink == nullptr) throw;
      sink->push_back(e.what());
    }
  }
  finalize(devices, [&](std::size_t i) { return where(positions[i]); }, sink);
  return devices;
}

}  // namespace

std::vector<Device> parse_device_file(std::string_view text, std::string_view source) {
  return parse_devices(text, std::string(source), nullptr);
}

std::vector<std::string> check_device_file(std::string_view text, std::string_view source) {
  std::vector<std::string> issues;
  parse_devices(text, std::string(source), &issues);
  return issues;
}

std::string serialize_device_file(std::span<const Device> devices) {
  auto doc = nlohmann::ordered_json::array();
  for (const Device& d : devices) doc.push_back(detail::device_record(d));
  return doc.dump(2) + "\n";
}

Catalog::Catalog() : devices_(std::make_shared<const std::vector<Device>>()) {}

Catalog::Catalog(std::filesystem::path store_path) : Catalog() {
  store_path_ = std::move(store_path);
  if (std::filesystem::exists(*store_path_)) ingest_file(*store_path_);
}

std::size_t Catalog::ingest(std::vector<Device> devices) {
  finalize(devices, [](std::size_t i) { return "record " + std::to_string(i + 1); });
  std::sort(devices.begin(), devices.end(), listing_less);

  std::lock_guard write_lock(write_mutex_);
  if (store_path_) {
    auto tmp = *store_path_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << serialize_device_file(devices);
      out.flush();
      if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, *store_path_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot replace " + store_path_->string() + ": " + ec.message());
  }
  auto published = std::make_shared<const std::vector<Device>>(std::move(devices));
  std::size_t count = published->size();
  std::lock_guard lock(snapshot_mutex_);
  devices_ = std::move(published);
  return count;
}

std::size_t Catalog::ingest_text(std::string_view text, std::string_view source) {
  return ingest(parse_device_file(text, source));
}

std::size_t Catalog::ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_text(buf.str(), path.filename().string());
}

Catalog::Snapshot Catalog::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return devices_;
}

std::size_t Catalog::size() const { return snapshot()->size(); }

std::vector<Device> Catalog::match(const MatchQuery& query) const {
  auto devices = snapshot();
  return match_devices(*devices, query);
}

DevicePage Catalog::list(std::size_t page, std::size_t page_size) const {
  auto devices = snapshot();
  return paginate(*devices, page, page_size);
}

std::string Catalog::export_text() const { return serialize_device_file(*snapshot()); }

}  // namespace heats
