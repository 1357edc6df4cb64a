#pragma once

#include <span>
#include <string>

#include "heats/catalog.hpp"
#include "heats/heatcalc.hpp"

namespace heats::api {

// JSON documents shared by the HTTP service and the CLI. Numbers are
// rounded half-to-even: q_kw and q_mcal to 4 decimals, everything else to
// 6. Output is compact and key order is fixed, so equal inputs always give
// byte-identical text.

/// SizingResponse. Includes a "warning" member when q_watts <= 0.
std::string sizing_document(const HeatLoad& load);

/// One page of devices as served by GET /v1/devices.
std::string device_page_document(const DevicePage& page,
                                 const MatchQuery* query = nullptr);

/// {"code": ..., "message": ...} plus an optional per-field list.
std::string error_document(std::string_view code, std::string_view message,
                           std::span<const FieldIssue> fields = {});

}  // namespace heats::api
