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

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>

#include "checks.hpp"

namespace ranklabel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            (std::string("ranklabel-service-") +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    Start();
  }

  void TearDown() override {
    Stop();
    fs::remove_all(root_);
  }

  void Start(std::size_t max_upload = kDefaultMaxUploadBytes) {
    ServiceConfig config;
    config.host = "127.0.0.1";
    config.port = 0;
    config.data_dir = root_;
    config.max_upload_bytes = max_upload;
    service_ = std::make_unique<Service>(config);
    port_ = service_->bind();
    thread_ = std::thread([this] { service_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 200 && !service_->is_running(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }

  void Stop() {
    service_->stop();
    if (thread_.joinable()) thread_.join();
    client_.reset();
    service_.reset();
  }

  static std::string cs_bytes() {
    return testing::read_file(testing::fixture_path("cs_departments.csv"));
  }

  static json cs_request() {
    return {{"weights", {{"PubCount", 1.0}, {"GRE", 0.3}}},
            {"normalization", "minmax"},
            {"sensitive_attribute", "DeptSizeBin"},
            {"diversity_attributes", {"Region"}},
            {"k", 10}};
  }

  std::string upload_cs() {
    auto res = client_->Post("/api/v1/datasets", cs_bytes(), "text/csv");
    EXPECT_TRUE(res);
    return json::parse(res->body)["dataset_id"];
  }

  fs::path root_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

void expect_error_shape(const httplib::Result& res, int status, const std::string& code) {
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, status);
  EXPECT_THAT(res->get_header_value("Content-Type"), ::testing::HasSubstr("application/json"));
  const json body = json::parse(res->body);
  EXPECT_EQ(body["error"], code);
  EXPECT_TRUE(body["message"].is_string());
  EXPECT_FALSE(body["message"].get<std::string>().empty());
}

TEST_F(ServiceTest, UploadIsIdempotent) {
  auto first = client_->Post("/api/v1/datasets", cs_bytes(), "text/csv");
  ASSERT_TRUE(first);
  EXPECT_EQ(first->status, 201);
  const json a = json::parse(first->body);
  EXPECT_EQ(a["row_count"], 60);
  EXPECT_EQ(a["schema"].size(), 6u);
  EXPECT_EQ(a["schema"][0]["name"], "Department");
  auto second = client_->Post("/api/v1/datasets", cs_bytes(), "text/csv");
  EXPECT_EQ(second->status, 200);
  EXPECT_EQ(json::parse(second->body)["dataset_id"], a["dataset_id"]);
}

TEST_F(ServiceTest, DescribeAndHistogram) {
  const std::string id = upload_cs();
  auto res = client_->Get("/api/v1/datasets/" + id);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  const json d = json::parse(res->body);
  EXPECT_EQ(d["dataset_id"], id);
  EXPECT_EQ(d["columns"].size(), 6u);

  auto h = client_->Get("/api/v1/datasets/" + id + "/histogram?attribute=GRE&bins=5");
  ASSERT_TRUE(h);
  EXPECT_EQ(h->status, 200);
  const json hist = json::parse(h->body);
  EXPECT_EQ(hist["counts"].size(), 5u);
  std::size_t total = 0;
  for (const auto& c : hist["counts"]) total += c.get<std::size_t>();
  EXPECT_EQ(total, 60u);
  EXPECT_EQ(json::parse(client_->Get("/api/v1/datasets/" + id + "/histogram?attribute=GRE")->body)["counts"].size(),
            10u);

  expect_error_shape(client_->Get("/api/v1/datasets/" + id + "/histogram?attribute=Region"), 400,
                     "type_mismatch");
  expect_error_shape(client_->Get("/api/v1/datasets/" + id + "/histogram?attribute=GRE&bins=0"), 400,
                     "invalid_request");
  expect_error_shape(client_->Get("/api/v1/datasets/" + id + "/histogram"), 400, "invalid_request");
}

TEST_F(ServiceTest, RankingAndLabels) {
  const std::string id = upload_cs();
  auto res = client_->Post("/api/v1/datasets/" + id + "/rankings", cs_request().dump(),
                           "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  const std::string ranking_id = body["ranking_id"];
  EXPECT_EQ(body["preview"].size(), 10u);
  EXPECT_EQ(body["preview"][0]["rank"], 1);

  auto again = client_->Post("/api/v1/datasets/" + id + "/rankings", cs_request().dump(),
                             "application/json");
  EXPECT_EQ(json::parse(again->body)["ranking_id"], ranking_id);

  auto label = client_->Get("/api/v1/rankings/" + ranking_id + "/label");
  ASSERT_TRUE(label);
  EXPECT_EQ(label->status, 200);
  const json l = json::parse(label->body);
  EXPECT_EQ(l["diversity"][0]["topk"], json({{"large", 1.0}}));
  const json schema = json::parse(testing::read_file(testing::schema_path()));
  EXPECT_THAT(testing::schema_violations(schema, l), ::testing::IsEmpty());

  auto html = client_->Get("/api/v1/rankings/" + ranking_id + "/label.html");
  ASSERT_TRUE(html);
  EXPECT_EQ(html->status, 200);
  EXPECT_THAT(html->get_header_value("Content-Type"), ::testing::HasSubstr("text/html"));
  EXPECT_EQ(testing::element_attributes(html->body, "section", "data-widget").size(), 6u);
}

TEST_F(ServiceTest, LabelsSurviveRestart) {
  const std::string id = upload_cs();
  auto res = client_->Post("/api/v1/datasets/" + id + "/rankings", cs_request().dump(),
                           "application/json");
  const std::string ranking_id = json::parse(res->body)["ranking_id"];
  const std::string before = client_->Get("/api/v1/rankings/" + ranking_id + "/label")->body;
  Stop();
  Start();
  auto after = client_->Get("/api/v1/rankings/" + ranking_id + "/label");
  ASSERT_TRUE(after);
  EXPECT_EQ(after->status, 200);
  EXPECT_EQ(after->body, before);
  EXPECT_EQ(client_->Get("/api/v1/datasets/" + id)->status, 200);
}

TEST_F(ServiceTest, NotFound) {
  expect_error_shape(client_->Get("/api/v1/rankings/0123456789abcdef/label"), 404, "not_found");
  expect_error_shape(client_->Get("/api/v1/rankings/unknown/label.html"), 404, "not_found");
  expect_error_shape(client_->Get("/api/v1/datasets/0123456789abcdef"), 404, "not_found");
  expect_error_shape(client_->Post("/api/v1/datasets/0123456789abcdef/rankings",
                                   cs_request().dump(), "application/json"),
                     404, "not_found");
  expect_error_shape(client_->Get("/api/v1/nothing"), 404, "not_found");
}

TEST_F(ServiceTest, InvalidRequestsCarryFieldErrors) {
  const std::string id = upload_cs();
  json req = cs_request();
  req["weights"] = {{"Nope", 1.0}};
  auto res = client_->Post("/api/v1/datasets/" + id + "/rankings", req.dump(), "application/json");
  expect_error_shape(res, 400, "unknown_attribute");
  const json body = json::parse(res->body);
  ASSERT_EQ(body["fields"].size(), 1u);
  EXPECT_EQ(body["fields"][0]["field"], "weights.Nope");
  EXPECT_EQ(body["fields"][0]["error"], "unknown_attribute");

  auto malformed = client_->Post("/api/v1/datasets/" + id + "/rankings", "{not json",
                                 "application/json");
  expect_error_shape(malformed, 400, "invalid_request");
  EXPECT_EQ(json::parse(malformed->body)["fields"][0]["field"], "body");

  json bad_types = cs_request();
  bad_types["k"] = -3;
  bad_types["alpha"] = "x";
  auto typed = client_->Post("/api/v1/datasets/" + id + "/rankings", bad_types.dump(),
                             "application/json");
  expect_error_shape(typed, 400, "invalid_request");
  EXPECT_EQ(json::parse(typed->body)["fields"].size(), 2u);

  json nonbinary = cs_request();
  nonbinary["sensitive_attribute"] = "Region";
  expect_error_shape(client_->Post("/api/v1/datasets/" + id + "/rankings", nonbinary.dump(),
                                   "application/json"),
                     400, "non_binary_attribute");
}

TEST_F(ServiceTest, BadUploads) {
  auto ragged = client_->Post("/api/v1/datasets", "a,b\n1,2\n3\n", "text/csv");
  expect_error_shape(ragged, 400, "malformed_row");
  EXPECT_EQ(json::parse(ragged->body)["row"], 1);
  expect_error_shape(client_->Post("/api/v1/datasets", "", "text/csv"), 400, "invalid_dataset");
}

TEST_F(ServiceTest, UploadSizeCap) {
  Stop();
  Start(64);
  expect_error_shape(client_->Post("/api/v1/datasets", cs_bytes(), "text/csv"), 413,
                     "payload_too_large");
  EXPECT_EQ(client_->Post("/api/v1/datasets", "a\n1\n", "text/csv")->status, 201);
}

TEST_F(ServiceTest, IndexPage) {
  auto res = client_->Get("/");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_THAT(res->body, ::testing::HasSubstr("/api/v1/datasets"));
}

}  // namespace
}  // namespace ranklabel
