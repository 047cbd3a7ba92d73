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


#include "ranklabel/label.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <functional>
#include <set>
#include <string>

#include "checks.hpp"
#include "ranklabel/error.hpp"

namespace ranklabel {
namespace {

using nlohmann::json;

struct Built {
  Dataset dataset;
  Ranking ranking;
  NutritionalLabel label;
};

Built cs_label(const LabelOptions& options = {}) {
  Dataset ds = load_csv(testing::read_file(testing::fixture_path("cs_departments.csv")));
  const ScoringSpec spec{{{"PubCount", 1.0}, {"GRE", 0.3}}, Normalization::kMinMax};
  Ranking r = rank(compute_scores(ds, spec), 10);
  NutritionalLabel label = build_label(ds, r, "DeptSizeBin", {"Region"}, {}, options);
  return {std::move(ds), std::move(r), std::move(label)};
}

TEST(BuildLabelTest, CsDiversityTopTenIsOneSize) {
  const auto b = cs_label();
  ASSERT_EQ(b.label.diversity.size(), 2u);
  EXPECT_EQ(b.label.diversity[0].attribute, "DeptSizeBin");
  EXPECT_EQ(b.label.diversity[1].attribute, "Region");
  ASSERT_EQ(b.label.diversity[0].proportions_topk.size(), 1u);
  EXPECT_EQ(b.label.diversity[0].proportions_topk.begin()->second, 1.0);
  EXPECT_EQ(b.label.diversity[0].proportions_overall.size(), 2u);
  EXPECT_EQ(b.label.fairness.size(), 6u);
  EXPECT_EQ(b.label.metadata.k, 10u);
  EXPECT_EQ(b.label.metadata.row_count, 60u);
  EXPECT_EQ(b.label.metadata.dataset_digest, b.dataset.source_digest());
}

TEST(BuildLabelTest, Deterministic) {
  EXPECT_EQ(render_json(cs_label().label), render_json(cs_label().label));
  EXPECT_EQ(render_html(cs_label().label), render_html(cs_label().label));
}

TEST(BuildLabelTest, TimestampIsOptIn) {
  LabelOptions options;
  options.include_timestamp = true;
  const auto b = cs_label(options);
  EXPECT_TRUE(b.label.metadata.generated_at.has_value());
  EXPECT_NE(render_json(b.label).find("generated_at"), std::string::npos);
  EXPECT_EQ(render_json(cs_label().label).find("generated_at"), std::string::npos);
}

TEST(BuildLabelTest, NonBinarySensitiveIsTaggedFairness) {
  const Dataset ds = load_csv("s,g\n3,a\n2,b\n1,c\n0,a\n");
  const Ranking r = rank(compute_scores(ds, {{{"s", 1.0}}}), 2);
  try {
    build_label(ds, r, "g", {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonBinaryAttribute);
    ASSERT_TRUE(e.widget().has_value());
    EXPECT_EQ(*e.widget(), "fairness");
  }
}

TEST(BuildLabelTest, DigestMismatchRejected) {
  const auto b = cs_label();
  Ranking other = b.ranking;
  other.dataset_digest = "00";
  EXPECT_THROW(build_label(b.dataset, other, "DeptSizeBin", {}, {}), Error);
}

TEST(RenderJsonTest, RoundTrips) {
  const auto b = cs_label();
  const std::string text = render_json(b.label);
  const NutritionalLabel parsed = parse_label(text);
  EXPECT_EQ(parsed, b.label);
  EXPECT_EQ(render_json(parsed), text);
}

TEST(RenderJsonTest, KeyOrderAndOptionalFields) {
  const json j = json::parse(render_json(cs_label().label));
  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(render_json(cs_label().label));
  for (const auto& [k, v] : ordered.items()) keys.push_back(k);
  EXPECT_THAT(keys, ::testing::ElementsAre("label_schema", "metadata", "recipe", "ingredients",
                                           "stability", "fairness", "diversity"));
  EXPECT_EQ(j["label_schema"], "1.0");
  for (const auto& f : j["fairness"]) {
    if (f["measure"] == "fa_ir") {
      EXPECT_FALSE(f.contains("p_value"));
      EXPECT_EQ(f["details"]["cross_feature_correction"], false);
    } else {
      EXPECT_TRUE(f["p_value"].is_number());
    }
  }
  EXPECT_FALSE(j["metadata"].contains("p_override"));
}

TEST(RenderJsonTest, ValidatesAgainstSchema) {
  const json schema = json::parse(testing::read_file(testing::schema_path()));
  const json doc = json::parse(render_json(cs_label().label));
  EXPECT_THAT(testing::schema_violations(schema, doc), ::testing::IsEmpty());
  json broken = doc;
  broken["fairness"][0]["p_value"] = 0.5;
  broken["stability"].erase("threshold");
  EXPECT_EQ(testing::schema_violations(schema, broken).size(), 2u);
}

TEST(RenderJsonTest, ShortestRoundTripFloats) {
  NutritionalLabel label = cs_label().label;
  label.stability.slope_topk = 0.1;
  label.stability.slope_overall = 1.0 / 3.0;
  const std::string text = render_json(label);
  EXPECT_NE(text.find("\"slope_topk\": 0.1,"), std::string::npos);
  EXPECT_NE(text.find("\"slope_overall\": 0.3333333333333333,"), std::string::npos);
}

TEST(ParseLabelTest, RejectsForeignSchema) {
  json j = json::parse(render_json(cs_label().label));
  j["label_schema"] = "9.9";
  EXPECT_THROW(parse_label(j.dump()), Error);
  EXPECT_THROW(parse_label("not json"), Error);
}

TEST(RenderHtmlTest, WellFormedWithSixWidgets) {
  const std::string html = render_html(cs_label().label);
  EXPECT_EQ(testing::xml_error(html), "");
  const auto widgets = testing::element_attributes(html, "section", "data-widget");
  EXPECT_THAT(widgets, ::testing::ElementsAre("recipe", "ingredients", "stability", "fairness",
                                              "diversity-topk", "diversity-overall"));
  EXPECT_EQ(html.find("http://"), std::string::npos);
  EXPECT_EQ(html.find("https://"), std::string::npos);
  EXPECT_EQ(html.find("<script"), std::string::npos);
}

TEST(RenderHtmlTest, UnfairVerdictIsMarked) {
  const std::string html = render_html(cs_label().label);
  const auto verdicts = testing::element_attributes(html, "section", "data-verdict");
  EXPECT_THAT(verdicts, ::testing::Contains("unfair"));
  EXPECT_THAT(testing::element_attributes(html, "tr", "data-fair"), ::testing::Contains("false"));
}

TEST(RenderHtmlTest, EveryNumberAppearsInJson) {
  const auto label = cs_label().label;
  const std::string html = render_html(label);
  const std::string text = render_json(label);
  std::set<std::string> json_numbers;
  std::function<void(const json&)> walk = [&](const json& v) {
    if (v.is_number()) json_numbers.insert(v.dump());
    if (v.is_structured()) {
      for (const auto& child : v) walk(child);
    }
  };
  walk(json::parse(text));
  const std::size_t k = label.metadata.k;
  for (const auto& n : testing::text_numbers(html)) {
    // Prefix positions 1..k label table rows; they are not measurements.
    if (n.find_first_not_of("0123456789") == std::string::npos && std::stoul(n) >= 1 &&
        std::stoul(n) <= k) {
      continue;
    }
    EXPECT_TRUE(json_numbers.count(n)) << n;
  }
}

}  // namespace
}  // namespace ranklabel
