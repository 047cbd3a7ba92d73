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

#include "ranklabel/service.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "ranklabel/label.hpp"
#include "ranklabel/request.hpp"
#include "ranklabel/store.hpp"

namespace ranklabel {

using OrderedJson = nlohmann::ordered_json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kInvalidDataset:
    case ErrorCode::kMalformedRow:
    case ErrorCode::kUnknownAttribute:
    case ErrorCode::kTypeMismatch:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidRequest:
    case ErrorCode::kNonBinaryAttribute:
      return 400;
    case ErrorCode::kEmptyColumn:
    case ErrorCode::kAllRowsDropped:
    case ErrorCode::kUndefinedCorrelation:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kEmptyGroup:
    case ErrorCode::kDegeneratePopulation:
      return 422;
  }
  return 500;
}

namespace {

constexpr const char* kJsonType = "application/json";

constexpr const char* kIndexPage = R"html(<!DOCTYPE html>
<html lang="en"><head><meta charset="utf-8"/><title>ranklabel</title></head>
<body><h1>ranklabel service</h1>
<p>Upload a CSV with <code>POST /api/v1/datasets</code>, then create a ranking
with <code>POST /api/v1/datasets/{id}/rankings</code> and fetch its label from
<code>/api/v1/rankings/{id}/label</code> or <code>label.html</code>.</p>
</body></html>
)html";

void send_json(httplib::Response& res, int status, const OrderedJson& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJsonType);
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  OrderedJson body;
  body["error"] = code;
  body["message"] = message;
  send_json(res, status, body);
}

void send_error(httplib::Response& res, const Error& e) {
  OrderedJson body;
  body["error"] = error_code_name(e.code());
  body["message"] = e.what();
  if (e.widget()) body["widget"] = *e.widget();
  if (e.row()) body["row"] = *e.row();
  if (const auto* re = dynamic_cast<const RequestError*>(&e)) {
    body["fields"] = OrderedJson::array();
    for (const auto& f : re->fields()) {
      body["fields"].push_back({{"field", f.field},
                                {"error", error_code_name(f.code)},
                                {"message", f.message}});
    }
  }
  send_json(res, http_status_for(e.code()), body);
}

// Wraps a handler so engine errors become error objects.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const nlohmann::json::exception& e) {
      send_error(res, 400, "invalid_request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceConfig cfg)
      : config(std::move(cfg)), store(config.data_dir) {
    routes();
  }

  void routes();

  ServiceConfig config;
  SessionStore store;
  httplib::Server server;
  bool bound = false;
};

void Service::Impl::routes() {
  server.set_payload_max_length(config.max_upload_bytes);
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) {
      send_error(res, 413, "payload_too_large", "upload exceeds the size cap");
    } else if (res.status == 404) {
      send_error(res, 404, "not_found", "no such endpoint");
    } else {
      send_error(res, res.status, "http_error", httplib::status_message(res.status));
    }
  });

  server.Post("/api/v1/datasets", guarded([this](const httplib::Request& req,
                                                 httplib::Response& res) {
    if (req.body.size() > config.max_upload_bytes) {
      send_error(res, 413, "payload_too_large", "upload exceeds the size cap");
      return;
    }
    const auto stored = store.put_dataset(req.body);
    OrderedJson body;
    body["dataset_id"] = stored.id;
    body["row_count"] = stored.dataset->row_count();
    OrderedJson schema = OrderedJson::array();
    for (const auto& col : stored.dataset->columns()) {
      schema.push_back({{"name", col.name()},
                        {"kind", column_kind_name(col.kind())},
                        {"missing", col.missing_count()}});
    }
    body["schema"] = std::move(schema);
    send_json(res, stored.created ? 201 : 200, body);
  }));

  server.Get("/api/v1/datasets", guarded([this](const httplib::Request&,
                                                httplib::Response& res) {
    send_json(res, 200, {{"datasets", store.dataset_ids()}});
  }));

  server.Get(R"(/api/v1/datasets/([^/]+))",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto ds = store.dataset(id);
               if (!ds) throw Error(ErrorCode::kNotFound, "unknown dataset '" + id + "'");
               OrderedJson body;
               body["dataset_id"] = id;
               const OrderedJson described = describe_dataset(*ds);
               for (const auto& [k, v] : described.items()) body[k] = v;
               send_json(res, 200, body);
             }));

  server.Get(R"(/api/v1/datasets/([^/]+)/histogram)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto ds = store.dataset(id);
               if (!ds) throw Error(ErrorCode::kNotFound, "unknown dataset '" + id + "'");
               if (!req.has_param("attribute")) {
                 throw Error(ErrorCode::kInvalidRequest,
                             "query parameter 'attribute' is required");
               }
               std::size_t bins = kDefaultHistogramBins;
               if (req.has_param("bins")) {
                 const auto v = parse_decimal(req.get_param_value("bins"));
                 if (!v || *v < 1 || *v != static_cast<double>(static_cast<std::size_t>(*v)) ||
                     *v > 10000) {
                   throw Error(ErrorCode::kInvalidRequest,
                               "bins must be an integer between 1 and 10000");
                 }
                 bins = static_cast<std::size_t>(*v);
               }
               send_json(res, 200,
                         histogram_json(histogram(*ds, req.get_param_value("attribute"), bins)));
             }));

  server.Post(R"(/api/v1/datasets/([^/]+)/rankings)",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                if (!store.dataset(id)) {
                  throw Error(ErrorCode::kNotFound, "unknown dataset '" + id + "'");
                }
                nlohmann::json body;
                try {
                  body = nlohmann::json::parse(req.body);
                } catch (const nlohmann::json::parse_error& e) {
                  throw RequestError({{"body", ErrorCode::kInvalidRequest,
                                       std::string("malformed JSON: ") + e.what()}});
                }
                const auto request = parse_ranking_request(body);
                const auto stored = store.put_ranking(id, request);
                OrderedJson out;
                out["ranking_id"] = stored->id;
                out["dataset_id"] = stored->dataset_id;
                out["preview"] = stored->preview;
                send_json(res, 200, out);
              }));

  server.Get(R"(/api/v1/rankings/([^/]+)/label)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto stored = store.ranking(id);
               if (!stored) throw Error(ErrorCode::kNotFound, "unknown ranking '" + id + "'");
               res.status = 200;
               res.set_content(stored->label_json, kJsonType);
             }));

  server.Get(R"(/api/v1/rankings/([^/]+)/label\.html)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto stored = store.ranking(id);
               if (!stored) throw Error(ErrorCode::kNotFound, "unknown ranking '" + id + "'");
               res.status = 200;
               res.set_content(render_html(parse_label(stored->label_json)),
                               "text/html; charset=utf-8");
             }));

  if (config.ui_dir && std::filesystem::is_directory(*config.ui_dir)) {
    server.set_mount_point("/", config.ui_dir->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kIndexPage, "text/html; charset=utf-8");
    });
  }
}

Service::Service(ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

int Service::bind() {
  int port = impl_->config.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (!impl_->server.bind_to_port(impl_->config.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw std::runtime_error("cannot bind " + impl_->config.host + ":" +
                             std::to_string(impl_->config.port));
  }
  impl_->bound = true;
  return port;
}

void Service::listen() {
  if (!impl_->bound) bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool Service::is_running() const { return impl_->server.is_running(); }

}  // namespace ranklabel
