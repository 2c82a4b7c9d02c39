#pragma once

// HTTP API over the store, review desk and analytics. `Api` is the
// transport-free router (method, path, query, body -> status + JSON), so it
// can be exercised without sockets; `Server` binds it to cpp-httplib.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "catalogue/entry_json.hpp"
#include "catalogue/errors.hpp"
#include "catalogue/review.hpp"
#include "catalogue/store.hpp"

namespace catalogue::service {

struct Config {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "catalogue-data";
  /// Empty disables CORS headers.
  std::string cors_origin;
  bool forbid_self_validation = false;
  std::size_t threads = 8;
};

/// Reads a JSON config file (any subset of "listen", "data_dir",
/// "cors_origin", "forbid_self_validation", "threads"), then applies the
/// CATALOGUE_LISTEN, CATALOGUE_DATA_DIR and CATALOGUE_CORS_ORIGIN
/// environment variables. "listen" is "host:port".
Config load_config(const std::optional<std::filesystem::path>& path);

struct ApiError {
  int status = 500;
  std::string kind;
  std::string detail;
  std::string field_path;
  std::optional<ValidationReport> report;

  Json to_json() const;
};

/// The single (status, kind) pair for each error kind.
int http_status(ErrorKind kind);
ApiError api_error(const Error& e);

struct Request {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> query;
  std::string body;
  std::string content_type;
};

struct Response {
  int status = 200;
  /// Serialized body (canonical JSON unless `content_type` says otherwise).
  std::string body;
  std::string content_type = "application/json";
  /// Location header for 201 responses.
  std::string location;

  Json json() const { return Json::parse(body); }
};

/// Query parameters of GET /entries and the analytics endpoints.
store::Filter filter_from_query(const std::multimap<std::string, std::string>& query);

class Api {
 public:
  Api(store::Store& store, review::Policy policy = {});

  Response handle(const Request& req);

  store::Store& store() { return store_; }

 private:
  Response dispatch(const Request& req);

  store::Store& store_;
  review::Desk desk_;
};

/// OpenAPI 3 description of every route `Api` serves.
Json openapi();

/// Names accepted by GET /analytics/{name}.
std::span<const std::string_view> analytics_endpoints();

class Server {
 public:
  explicit Server(Config config);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the configured address (port 0 picks a free port) and returns
  /// the bound port. Throws storage-io when binding fails.
  int bind();
  /// Blocks serving requests until stop().
  void run();
  void stop();
  bool running() const;

  Api& api() { return *api_; }
  const Config& config() const { return config_; }

 private:
  struct Impl;
  Config config_;
  std::unique_ptr<store::Store> store_;
  std::unique_ptr<Api> api_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace catalogue::service
