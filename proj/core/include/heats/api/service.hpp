#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "heats/catalog.hpp"
#include "heats/tables.hpp"

namespace heats::api {

struct Request {
  std::string method;  // "GET", "POST", ...
  std::string path;    // without query string
  std::vector<std::pair<std::string, std::string>> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // always application/json
};

/// Transport-independent request handler for the /v1 surface:
///
///   GET  /v1/cities
///   GET  /v1/destinations
///   GET  /v1/gn-options
///   POST /v1/sizing
///   GET  /v1/devices
///
/// Tables are immutable after construction; the catalog may be ingested
/// into concurrently. `handle` is safe to call from many threads.
class Service {
 public:
  Service(std::shared_ptr<const Tables> tables, std::shared_ptr<const Catalog> catalog);

  Response handle(const Request& request) const;

 private:
  Response cities(const Request& request) const;
  Response destinations(const Request& request) const;
  Response gn_options(const Request& request) const;
  Response sizing(const Request& request) const;
  Response devices(const Request& request) const;

  std::shared_ptr<const Tables> tables_;
  std::shared_ptr<const Catalog> catalog_;
};

}  // namespace heats::api
