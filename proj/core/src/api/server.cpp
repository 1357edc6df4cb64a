#include "heats/api/server.hpp"

#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <httplib.h>

#include "heats/decimal.hpp"

namespace heats::api {

ListenAddress ListenAddress::parse(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw std::invalid_argument("address must be host:port, got '" + text + "'");
  }
  std::string host = text.substr(0, colon);
  if (host.size() > 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  auto port = decimal::parse_integer(std::string_view(text).substr(colon + 1));
  if (!port || *port < 0 || *port > 65535) {
    throw std::invalid_argument("invalid port in '" + text + "'");
  }
  return {host, static_cast<int>(*port)};
}

struct Server::Impl {
  std::shared_ptr<const Service> service;
  httplib::Server http;
  bool bound = false;

  // run()/stop() handshake: stop() may arrive before the accept loop starts.
  std::mutex state_mutex;
  bool stop_requested = false;
  bool run_active = false;

  void dispatch(const httplib::Request& req, httplib::Response& res) const {
    Request request;
    request.method = req.method;
    request.path = req.path;
    // req.params also holds form-encoded body fields; use the target only.
    if (auto q = req.target.find('?'); q != std::string::npos) {
      httplib::Params params;
      httplib::detail::parse_query_text(req.target.substr(q + 1), params);
      for (const auto& [name, value] : params) request.query.emplace_back(name, value);
    }
    request.body = req.body;
    Response response = service->handle(request);
    res.status = response.status;
    res.set_content(response.body, "application/json");
  }
};

Server::Server(std::shared_ptr<const Service> service) : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    impl->dispatch(req, res);
  };
  impl_->http.Get(".*", handler);
  impl_->http.Post(".*", handler);
  impl_->http.Put(".*", handler);
  impl_->http.Patch(".*", handler);
  impl_->http.Delete(".*", handler);
  impl_->http.set_payload_max_length(1 << 20);
  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // silently share the port.
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  impl_->http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        res.status = 500;
        res.set_content(R"({"code":"Internal","message":"unhandled server error"})",
                        "application/json");
      });
}

Server::~Server() {
  stop();
}

int Server::bind(const ListenAddress& address) {
  int port = address.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(address.host);
    if (port < 0) port = -1;
  } else if (!impl_->http.bind_to_port(address.host, port)) {
    port = -1;
  }
  if (port <= 0) {
    throw std::runtime_error("cannot bind " + address.host + ":" + std::to_string(address.port));
  }
  impl_->bound = true;
  return port;
}

void Server::run() {
  if (!impl_->bound) throw std::logic_error("Server::run() before bind()");
  {
    std::lock_guard lock(impl_->state_mutex);
    if (impl_->stop_requested) return;
    impl_->run_active = true;
  }
  impl_->http.listen_after_bind();
  std::lock_guard lock(impl_->state_mutex);
  impl_->run_active = false;
}

void Server::stop() {
  if (!impl_) return;
  {
    std::lock_guard lock(impl_->state_mutex);
    if (impl_->stop_requested) return;
    impl_->stop_requested = true;
  }
  for (;;) {
    if (impl_->http.is_running()) {
      impl_->http.stop();
      return;
    }
    {
      std::lock_guard lock(impl_->state_mutex);
      if (!impl_->run_active) return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace heats::api
