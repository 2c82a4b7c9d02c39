#include <httplib.h>

#include "catalogue/service.hpp"

namespace catalogue::service {

struct Server::Impl {
  httplib::Server http;
  int port = -1;
};

namespace {

Request to_request(const httplib::Request& in) {
  Request r;
  r.method = in.method;
  r.path = in.path;
  for (const auto& [k, v] : in.params) r.query.emplace(k, v);
  r.body = in.body;
  r.content_type = in.get_header_value("Content-Type");
  return r;
}

}  // namespace

Server::Server(Config config)
    : config_(std::move(config)),
      store_(std::make_unique<store::Store>(config_.data_dir)),
      api_(std::make_unique<Api>(*store_, review::Policy{config_.forbid_self_validation})),
      impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;
  const std::size_t threads = config_.threads == 0 ? 1 : config_.threads;
  http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

  const std::string origin = config_.cors_origin;
  auto handler = [this, origin](const httplib::Request& in, httplib::Response& out) {
    const Response r = api_->handle(to_request(in));
    out.status = r.status;
    if (!r.location.empty()) out.set_header("Location", r.location);
    out.set_content(r.body, r.content_type + "; charset=utf-8");
  };
  const std::string pattern = R"(/.*)";
  http.Get(pattern, handler);
  http.Post(pattern, handler);
  http.Patch(pattern, handler);
  http.Put(pattern, handler);
  http.Delete(pattern, handler);
  http.Options(pattern, [](const httplib::Request&, httplib::Response& out) { out.status = 204; });

  if (!origin.empty()) {
    http.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& out) {
      out.set_header("Access-Control-Allow-Origin", origin);
      out.set_header("Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS");
      out.set_header("Access-Control-Allow-Headers", "Content-Type");
      out.set_header("Vary", "Origin");
    });
  }
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& http = impl_->http;
  if (config_.port == 0) {
    impl_->port = http.bind_to_any_port(config_.host);
  } else {
    impl_->port = http.bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (impl_->port < 0) {
    throw Error(ErrorKind::storage_io,
                "cannot listen on " + config_.host + ":" + std::to_string(config_.port));
  }
  return impl_->port;
}

void Server::run() {
  if (impl_->port < 0) bind();
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_) impl_->http.stop();
}

bool Server::running() const { return impl_->http.is_running(); }

}  // namespace catalogue::service
