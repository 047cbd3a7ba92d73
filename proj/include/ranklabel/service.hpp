// Copyright 2026 The Ranklabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ranklabel/error.hpp"

namespace ranklabel {

inline constexpr int kDefaultPort = 8080;
inline constexpr std::size_t kDefaultMaxUploadBytes = 50u * 1024u * 1024u;

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = kDefaultPort;  // 0 picks a free port
  std::filesystem::path data_dir = "ranklabel-data";
  std::size_t max_upload_bytes = kDefaultMaxUploadBytes;
  // Static UI assets served at "/"; a small index page is served otherwise.
  std::optional<std::filesystem::path> ui_dir;
};

// HTTP status for an engine error code.
int http_status_for(ErrorCode code);

// REST service over a SessionStore:
//
//   POST /api/v1/datasets                       CSV body -> descriptor
//   GET  /api/v1/datasets                       known dataset ids
//   GET  /api/v1/datasets/{id}                  schema + statistics
//   GET  /api/v1/datasets/{id}/histogram?attribute=A&bins=N
//   POST /api/v1/datasets/{id}/rankings         RankingRequest JSON
//   GET  /api/v1/rankings/{id}/label            label JSON
//   GET  /api/v1/rankings/{id}/label.html       label HTML
//
// Errors are {"error": code, "message": text} plus "fields" for request
// validation failures.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the listening socket and returns the bound port. Throws
  // std::runtime_error when the port is unavailable.
  int bind();
  // Serves until stop(); call after bind().
  void listen();
  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ranklabel
