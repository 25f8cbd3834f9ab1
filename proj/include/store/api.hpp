#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "store/catalog.hpp"
#include "store/error.hpp"
#include "store/model.hpp"

namespace store::api {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";

  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

int http_status(ErrorCode code);

// The /api/v1 endpoint set over one project file. Reads run concurrently,
// writes one at a time, and every write reaches disk before its response.
class Service {
 public:
  Service(std::filesystem::path project_path, std::optional<catalog::Catalog> catalog = std::nullopt);

  Response handle(std::string_view method, std::string_view path,
                  const std::map<std::string, std::string>& query, std::string_view body);

  Project snapshot() const;
  const std::filesystem::path& project_path() const { return project_path_; }

 private:
  struct Request;
  Response route(const Request& request);
  Response read(const Request& request);
  Response write(const Request& request);

  std::filesystem::path project_path_;
  std::optional<catalog::Catalog> catalog_;
  mutable std::shared_mutex mutex_;
  Project project_;
};

// HTTP transport around a Service. Optionally serves static UI files under /.
class HttpServer {
 public:
  explicit HttpServer(Service& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~HttpServer();

  // "host:port" or ":port"; port 0 picks a free one. Returns the bound port.
  // Throws BindFailure.
  int bind(const std::string& address);
  // Blocks until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace store::api
