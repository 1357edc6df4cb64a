#include "heats/api/documents.hpp"

#include <nlohmann/json.hpp>

#include "../device_json.hpp"
#include "heats/decimal.hpp"

namespace heats::api {
namespace {

using Json = nlohmann::ordered_json;

double display(double v) { return decimal::round_value(v, 6); }
double display_power(double v) { return decimal::round_value(v, 4); }

}  // namespace

std::string sizing_document(const HeatLoad& load) {
  Json j;
  j["q_kw"] = display_power(load.q_kw);
  j["q_mcal"] = display_power(load.q_mcal);
  j["q_watts"] = display(load.q_watts);
  j["gn_used"] = display(load.gn_used);
  j["gn_clamped"] = load.gn_clamped;
  j["volume_m3"] = display(load.volume);
  j["t_inside_c"] = display(load.t_inside);
  j["t_outside_c"] = display(load.t_outside);
  if (load.q_watts <= 0.0) {
    j["warning"] =
        "no heating required: the outside design temperature is not below the inside "
        "temperature";
  }
  return j.dump();
}

std::string device_page_document(const DevicePage& page, const MatchQuery* query) {
  Json j;
  if (query != nullptr) {
    j["required_kw"] = display(query->required_power_kw);
    j["headroom"] = display(query->headroom);
    j["filters"] = {{"combustion", to_string(query->criteria.combustion)},
                    {"burner", to_string(query->criteria.burner_type)},
                    {"fuel", to_string(query->criteria.fuel)}};
  }
  j["page"] = page.page;
  j["page_size"] = page.page_size;
  j["total"] = page.total;
  auto devices = Json::array();
  for (const Device& d : page.devices) devices.push_back(detail::device_resource(d));
  j["devices"] = std::move(devices);
  return j.dump();
}

std::string error_document(std::string_view code, std::string_view message,
                           std::span<const FieldIssue> fields) {
  Json j;
  j["code"] = code;
  j["message"] = message;
  if (!fields.empty()) {
    auto list = Json::array();
    for (const FieldIssue& f : fields) {
      list.push_back({{"field", f.field}, {"code", to_string(f.code)}, {"message", f.message}});
    }
    j["fields"] = std::move(list);
  }
  return j.dump();
}

}  // namespace heats::api
