#pragma once

#include <nlohmann/json.hpp>

#include "heats/catalog.hpp"

namespace heats::detail {

/// Device as a device-file record (no id).
nlohmann::ordered_json device_record(const Device& device);

/// Device as served by the API: id first, then the record fields.
nlohmann::ordered_json device_resource(const Device& device);

}  // namespace heats::detail
