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


#include "ranklabel/request.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <string>

#include "checks.hpp"
#include "ranklabel/error.hpp"

namespace ranklabel {
namespace {

using nlohmann::json;
using ::testing::ElementsAre;
using ::testing::Field;
using ::testing::UnorderedElementsAre;

Dataset cs() {
  return load_csv(testing::read_file(testing::fixture_path("cs_departments.csv")));
}

json cs_body() {
  return json{{"weights", {{"PubCount", 1.0}, {"GRE", 0.3}}},
              {"normalization", "minmax"},
              {"sensitive_attribute", "DeptSizeBin"},
              {"diversity_attributes", {"Region"}},
              {"k", 10}};
}

TEST(ParseRankingRequestTest, DefaultsAndRoundTrip) {
  const RankingRequest r = parse_ranking_request(
      json{{"weights", {{"a", 2}}}, {"sensitive_attribute", "g"}});
  EXPECT_EQ(r.k, 10u);
  EXPECT_EQ(r.alpha, 0.05);
  EXPECT_EQ(r.normalization, Normalization::kNone);
  EXPECT_FALSE(r.p.has_value());
  const RankingRequest full = parse_ranking_request(cs_body());
  EXPECT_EQ(parse_ranking_request(json::parse(request_json(full).dump())), full);
}

TEST(ParseRankingRequestTest, CanonicalFormIgnoresKeyOrder) {
  const json a = json::parse(R"({"k":10,"weights":{"GRE":0.3,"PubCount":1},"sensitive_attribute":"DeptSizeBin"})");
  const json b = json::parse(R"({"sensitive_attribute":"DeptSizeBin","weights":{"PubCount":1.0,"GRE":0.3}})");
  EXPECT_EQ(request_json(parse_ranking_request(a)).dump(),
            request_json(parse_ranking_request(b)).dump());
}

TEST(ParseRankingRequestTest, FieldErrors) {
  try {
    parse_ranking_request(json{{"weights", {{"a", "x"}}},
                               {"normalization", "log"},
                               {"k", 0},
                               {"alpha", "big"}});
    FAIL();
  } catch (const RequestError& e) {
    std::vector<std::string> fields;
    for (const auto& f : e.fields()) fields.push_back(f.field);
    EXPECT_THAT(fields, UnorderedElementsAre("weights.a", "normalization",
                                             "sensitive_attribute", "k", "alpha"));
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRequest);
  }
  EXPECT_THROW(parse_ranking_request(json::array()), RequestError);
}

TEST(ValidateRequestTest, ReportsEveryProblem) {
  RankingRequest r = parse_ranking_request(cs_body());
  r.weights["Nope"] = 1.0;
  r.weights["Region"] = 1.0;
  r.sensitive_attribute = "Region";
  r.diversity_attributes = {"GRE"};
  r.alpha = 2;
  r.p = 0;
  const auto errors = validate_request(cs(), r);
  std::vector<std::pair<std::string, ErrorCode>> got;
  for (const auto& e : errors) got.emplace_back(e.field, e.code);
  EXPECT_THAT(got, UnorderedElementsAre(
                       std::pair{std::string("weights.Nope"), ErrorCode::kUnknownAttribute},
                       std::pair{std::string("weights.Region"), ErrorCode::kTypeMismatch},
                       std::pair{std::string("sensitive_attribute"), ErrorCode::kNonBinaryAttribute},
                       std::pair{std::string("diversity_attributes"), ErrorCode::kTypeMismatch},
                       std::pair{std::string("alpha"), ErrorCode::kInvalidArgument},
                       std::pair{std::string("p"), ErrorCode::kInvalidArgument}));
  EXPECT_THAT(validate_request(cs(), parse_ranking_request(cs_body())), ::testing::IsEmpty());
}

TEST(RunRequestTest, DropsIncompleteRowsAndRecordsThem) {
  const Dataset ds = load_csv("a,b,g\n1,1,x\nNA,2,y\n3,3,NA\n4,NA,y\n5,5,x\n6,6,y\n");
  RankingRequest r;
  r.weights = {{"a", 1.0}};
  r.sensitive_attribute = "g";
  r.k = 2;
  const RankingOutcome out = run_request(ds, r);
  EXPECT_EQ(out.retained.row_count(), 4u);
  EXPECT_EQ(out.label.metadata.dropped_rows, 2u);
  EXPECT_EQ(out.label.metadata.row_count, 4u);
  EXPECT_THAT(out.ranking.order, ElementsAre(3u, 2u, 1u, 0u));
}

TEST(RunRequestTest, InvalidRequestThrowsWithFields) {
  RankingRequest r = parse_ranking_request(cs_body());
  r.weights = {{"Nope", 1.0}};
  try {
    run_request(cs(), r);
    FAIL();
  } catch (const RequestError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAttribute);
    ASSERT_EQ(e.fields().size(), 1u);
    EXPECT_EQ(e.fields()[0].field, "weights.Nope");
    EXPECT_THAT(e.what(), ::testing::HasSubstr("unknown attribute"));
  }
}

TEST(PreviewJsonTest, TopKRowsWithValues) {
  const RankingOutcome out = run_request(cs(), parse_ranking_request(cs_body()));
  const auto preview = preview_json(out.retained, out.ranking);
  ASSERT_EQ(preview.size(), 10u);
  EXPECT_EQ(preview[0]["rank"], 1);
  EXPECT_EQ(preview[0]["score"].get<double>(), out.ranking.scores[0]);
  EXPECT_EQ(preview[0]["values"]["DeptSizeBin"], "large");
  for (std::size_t i = 1; i < preview.size(); ++i) {
    EXPECT_GE(preview[i - 1]["score"].get<double>(), preview[i]["score"].get<double>());
  }
}

TEST(DescribeTest, DatasetAndHistogram) {
  const Dataset ds = load_csv("a,g\n1,x\n2,y\nNA,x\n");
  const auto d = describe_dataset(ds);
  EXPECT_EQ(d["row_count"], 3);
  EXPECT_EQ(d["columns"][0]["stats"]["median"], 1.5);
  EXPECT_EQ(d["columns"][0]["missing"], 1);
  EXPECT_EQ(d["columns"][1]["binary"], true);
  EXPECT_EQ(d["columns"][1]["categories"]["x"], 2);
  const auto h = histogram_json(histogram(ds, "a", 2));
  EXPECT_EQ(h["counts"], json({1, 1}));
  EXPECT_EQ(h["bin_edges"], json({1.0, 1.5, 2.0}));
}

TEST(ParseWeightsTest, Grammar) {
  EXPECT_EQ(parse_weights("PubCount=1.0,GRE=0.3"),
            (std::map<std::string, double>{{"GRE", 0.3}, {"PubCount", 1.0}}));
  EXPECT_EQ(parse_weights("a=-2e-1"), (std::map<std::string, double>{{"a", -0.2}}));
  EXPECT_THROW(parse_weights(""), Error);
  EXPECT_THROW(parse_weights("a"), Error);
  EXPECT_THROW(parse_weights("a=x"), Error);
  EXPECT_THROW(parse_weights("a=1,a=2"), Error);
  EXPECT_THROW(parse_weights("a=1,"), Error);
}

}  // namespace
}  // namespace ranklabel
