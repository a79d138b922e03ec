#include "quizboard/http_frontend.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "httplib.h"

namespace quizboard {

namespace {

using nlohmann::json;

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send(httplib::Response& res, const ServiceReply& reply) { send(res, reply.status, reply.body); }

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) {
    send(res, 400, {{"error", "bad_request"}, {"message", "request body is not valid JSON"}});
    return std::nullopt;
  }
  return body;
}

const char* image_type(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  if (ext == ".svg") return "image/svg+xml";
  return nullptr;
}

}  // namespace

HttpFrontend::HttpFrontend(GameService& service, std::filesystem::path assets_root)
    : service_(service), assets_root_(std::move(assets_root)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

HttpFrontend::~HttpFrontend() = default;

void HttpFrontend::install_routes() {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  s.Post("/games", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto body = parse_body(req, res)) send(res, service_.create_session(*body));
  });
  s.Get(R"(/games/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_state(req.matches[1].str()));
  });
  s.Post(R"(/games/([0-9a-f]+)/actions)", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto body = parse_body(req, res)) send(res, service_.post_action(req.matches[1].str(), *body));
  });
  s.Get(R"(/games/([0-9a-f]+)/transcript)", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_transcript(req.matches[1].str()));
  });
  s.Get("/banks", [this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, service_.banks_summary());
  });
  s.Get("/boards", [this](const httplib::Request&, httplib::Response& res) {
    send(res, 200, service_.boards_summary());
  });
  s.Get(R"(/boards/([a-z]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto board = service_.board(req.matches[1].str())) {
      send(res, 200, *board);
    } else {
      send(res, 404, {{"error", "not_found"}, {"message", "unknown board"}});
    }
  });
  s.Get(R"(/assets/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::filesystem::path rel(req.matches[1].str());
    const bool traversal = rel.is_absolute() || std::any_of(rel.begin(), rel.end(), [](const auto& part) {
                             return part == "..";
                           });
    const char* type = traversal ? nullptr : image_type(rel);
    const auto path = assets_root_ / rel;
    std::error_code ec;
    if (!type || !std::filesystem::is_regular_file(path, ec)) {
      send(res, 404, {{"error", "not_found"}, {"message", "no such asset"}});
      return;
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    res.set_content(bytes.str(), type);
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, res.status, {{"error", "not_found"}, {"message", "no such route"}});
  });
}

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::listen() { return server_->listen_after_bind(); }

void HttpFrontend::stop() { server_->stop(); }

}  // namespace quizboard
