#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "quizboard/service.hpp"

namespace httplib {
class Server;
}

namespace quizboard {

// Binds a GameService to HTTP routes:
//   POST /games                   create a session
//   GET  /games/{id}              current view
//   POST /games/{id}/actions      submit roll / answer / choose_pawn
//   GET  /games/{id}/transcript   seed and actions so far
//   GET  /banks                   topics per language
//   GET  /boards, /boards/{kind}  board definitions
//   GET  /assets/{lang}/{path}    question images from the banks directory
class HttpFrontend {
 public:
  HttpFrontend(GameService& service, std::filesystem::path assets_root);
  ~HttpFrontend();

  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // Returns the bound port; port 0 picks a free one. Returns -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  bool listen();
  void stop();

 private:
  void install_routes();

  GameService& service_;
  std::filesystem::path assets_root_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace quizboard
