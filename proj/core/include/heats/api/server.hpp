#pragma once

#include <memory>
#include <string>

#include "heats/api/service.hpp"

namespace heats::api {

/// "host:port" split; throws std::invalid_argument on a malformed address.
struct ListenAddress {
  std::string host;
  int port = 0;

  static ListenAddress parse(const std::string& text);
};

/// HTTP/1.1 front end for a Service. bind() and run() are split so callers
/// can learn an ephemeral port before blocking.
class Server {
 public:
  explicit Server(std::shared_ptr<const Service> service);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Returns the bound port (useful with port 0). Throws std::runtime_error
  /// if the address cannot be bound.
  int bind(const ListenAddress& address);

  /// Serves until stop(). Requires a successful bind().
  void run();

  /// Thread-safe; makes run() return.
  void stop();

  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace heats::api
