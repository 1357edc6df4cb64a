#include "heats/api/service.hpp"

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "heats/api/documents.hpp"
#include "heats/decimal.hpp"
#include "heats/heatcalc.hpp"

namespace heats::api {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr std::size_t kDefaultPageSize = 20;
constexpr std::size_t kMaxPageSize = 1000;

Response error(int status, std::string_view code, std::string_view message,
               std::span<const FieldIssue> fields = {}) {
  return {status, error_document(code, message, fields)};
}

// Thrown while decoding a request; becomes a 400.
struct BadRequest {
  std::string code;
  std::string message;
};

// Query parameters as a map, rejecting duplicates and names not in `allowed`.
std::map<std::string, std::string> query_params(const Request& request,
                                                const std::set<std::string>& allowed) {
  std::map<std::string, std::string> params;
  for (const auto& [name, value] : request.query) {
    if (!allowed.contains(name)) throw BadRequest{"UnknownParameter", "unknown query parameter '" + name + "'"};
    if (!params.emplace(name, value).second) {
      throw BadRequest{"DuplicateParameter", "query parameter '" + name + "' given more than once"};
    }
  }
  return params;
}

double number_param(const std::string& name, const std::string& value) {
  auto v = decimal::parse(value);
  if (!v) throw BadRequest{"InvalidParameter", "'" + name + "' must be a number"};
  return *v;
}

std::size_t count_param(const std::string& name, const std::string& value, std::size_t max) {
  auto v = decimal::parse_integer(value);
  if (!v || *v < 1 || static_cast<unsigned long>(*v) > max) {
    throw BadRequest{"InvalidParameter",
                     "'" + name + "' must be an integer in [1, " + std::to_string(max) + "]"};
  }
  return static_cast<std::size_t>(*v);
}

template <class Parse>
auto enum_param(const std::string& name, const std::string& value, Parse parse) {
  auto v = parse(value);
  if (!v) throw BadRequest{"InvalidParameter", "'" + name + "': unknown value '" + value + "'"};
  return *v;
}

BuildingSpec decode_sizing(const std::string& body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error&) {
    throw BadRequest{"MalformedBody", "request body is not valid JSON"};
  }
  if (!doc.is_object()) throw BadRequest{"MalformedBody", "request body must be a JSON object"};

  static const std::set<std::string> fields = {"city", "destination", "levels", "av_ratio",
                                               "footprint_area_m2", "height_m"};
  for (const auto& [key, value] : doc.items()) {
    if (!fields.contains(key)) throw BadRequest{"MalformedBody", "unknown field '" + key + "'"};
  }
  auto member = [&](const char* name) -> const Json& {
    auto it = doc.find(name);
    if (it == doc.end()) throw BadRequest{"MalformedBody", std::string("missing field '") + name + "'"};
    return *it;
  };
  auto text = [&](const char* name) {
    const Json& v = member(name);
    if (!v.is_string()) throw BadRequest{"MalformedBody", std::string("'") + name + "' must be a string"};
    return v.get<std::string>();
  };
  auto number = [&](const char* name) {
    const Json& v = member(name);
    if (!v.is_number()) throw BadRequest{"MalformedBody", std::string("'") + name + "' must be a number"};
    return v.get<double>();
  };

  BuildingSpec spec;
  spec.city = text("city");
  spec.destination = text("destination");
  const Json& levels = member("levels");
  if (levels.is_number_integer()) {
    spec.levels = levels.get<long>();
  } else if (levels.is_number_float() && std::trunc(levels.get<double>()) == levels.get<double>() &&
             std::abs(levels.get<double>()) < 1e9) {
    spec.levels = static_cast<long>(levels.get<double>());
  } else {
    throw BadRequest{"MalformedBody", "'levels' must be an integer"};
  }
  spec.av_ratio = number("av_ratio");
  spec.footprint_area = number("footprint_area_m2");
  spec.height = number("height_m");
  return spec;
}

}  // namespace

Service::Service(std::shared_ptr<const Tables> tables, std::shared_ptr<const Catalog> catalog)
    : tables_(std::move(tables)), catalog_(std::move(catalog)) {}

Response Service::handle(const Request& request) const {
  struct Route {
    std::string_view path;
    std::string_view method;
    Response (Service::*handler)(const Request&) const;
  };
  static constexpr Route kRoutes[] = {
      {"/v1/cities", "GET", &Service::cities},
      {"/v1/destinations", "GET", &Service::destinations},
      {"/v1/gn-options", "GET", &Service::gn_options},
      {"/v1/sizing", "POST", &Service::sizing},
      {"/v1/devices", "GET", &Service::devices},
  };
  try {
    for (const Route& route : kRoutes) {
      if (route.path != request.path) continue;
      if (route.method != request.method) {
        return error(405, "MethodNotAllowed",
                     std::string(request.path) + " only accepts " + std::string(route.method));
      }
      return (this->*route.handler)(request);
    }
    return error(404, "NotFound", "no such endpoint: " + request.path);
  } catch (const BadRequest& e) {
    return error(400, e.code, e.message);
  } catch (const Error& e) {
    return error(422, to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error(500, "Internal", e.what());
  }
}

Response Service::cities(const Request& request) const {
  query_params(request, {});
  auto list = OrderedJson::array();
  for (const CityEntry& c : tables_->cities.sorted_by_name()) {
    list.push_back({{"name", c.name}, {"design_outside_temp_c", c.design_outside_temp}});
  }
  return {200, list.dump()};
}

Response Service::destinations(const Request& request) const {
  query_params(request, {});
  auto list = OrderedJson::array();
  for (const DestinationEntry& d : tables_->destinations.sorted_by_name()) {
    list.push_back({{"name", d.name}, {"inside_temp_c", d.inside_temp}});
  }
  return {200, list.dump()};
}

Response Service::gn_options(const Request& request) const {
  query_params(request, {});
  auto list = OrderedJson::array();
  for (long levels : tables_->gn.levels()) {
    auto ratios = OrderedJson::array();
    for (const GnRow& row : tables_->gn.group(levels)) ratios.push_back(row.av_ratio);
    OrderedJson group;
    group["levels"] = levels;
    group["ratios"] = std::move(ratios);
    list.push_back(std::move(group));
  }
  return {200, list.dump()};
}

Response Service::sizing(const Request& request) const {
  query_params(request, {});
  BuildingSpec spec = decode_sizing(request.body);
  auto issues = check_spec(spec, *tables_);
  if (!issues.empty()) {
    std::string_view code = issues.size() == 1 ? to_string(issues.front().code) : "ValidationFailed";
    return error(422, code, issues.front().message, issues);
  }
  return {200, sizing_document(size_structure(spec, *tables_))};
}

Response Service::devices(const Request& request) const {
  auto params = query_params(request, {"required_kw", "headroom", "combustion", "burner", "fuel",
                                       "page", "page_size"});
  auto get = [&](const char* name) -> const std::string* {
    auto it = params.find(name);
    return it == params.end() ? nullptr : &it->second;
  };
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;
  if (auto v = get("page")) page = count_param("page", *v, static_cast<std::size_t>(-1) >> 1);
  if (auto v = get("page_size")) page_size = count_param("page_size", *v, kMaxPageSize);

  const std::string* required = get("required_kw");
  if (required == nullptr) {
    for (const char* name : {"headroom", "combustion", "burner", "fuel"}) {
      if (get(name)) {
        throw BadRequest{"InvalidParameter", std::string("'") + name + "' requires 'required_kw'"};
      }
    }
    return {200, device_page_document(catalog_->list(page, page_size))};
  }

  MatchQuery query;
  query.required_power_kw = number_param("required_kw", *required);
  if (query.required_power_kw <= 0.0) {
    throw BadRequest{"InvalidParameter", "'required_kw' must be positive"};
  }
  if (auto v = get("headroom")) {
    query.headroom = number_param("headroom", *v);
    if (query.headroom < 1.0) throw BadRequest{"InvalidParameter", "'headroom' must be at least 1"};
  }
  if (auto v = get("combustion")) {
    query.criteria.combustion = enum_param("combustion", *v, parse_combustion_filter);
  }
  if (auto v = get("burner")) query.criteria.burner_type = enum_param("burner", *v, parse_burner_filter);
  if (auto v = get("fuel")) query.criteria.fuel = enum_param("fuel", *v, parse_fuel_filter);

  auto matched = catalog_->match(query);
  return {200, device_page_document(paginate(matched, page, page_size), &query)};
}

}  // namespace heats::api
