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

#include <algorithm>
#include <chrono>
#include <ctime>
#include <exception>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ranklabel/error.hpp"

namespace ranklabel {

using Json = nlohmann::ordered_json;

std::map<std::string, std::string> methodology_notes() {
  return {
      {"fa_ir_significance",
       "per-prefix significance adjusted so that rankings generated by "
       "independent Bernoulli(p) draws fail some prefix with probability at "
       "most alpha"},
      {"fa_ir_statistic",
       "minimum over prefixes of the binomial CDF of the protected count; a "
       "diagnostic, not a calibrated p-value"},
      {"ingredient_method",
       "absolute Spearman rank correlation of each numeric attribute with the "
       "score over ranked rows, ties given average ranks"},
      {"missing_values",
       "rows missing any scoring or sensitive attribute are dropped before "
       "ranking; missing diversity values are reported as unknown"},
      {"multiple_features",
       "no correction for testing both values of the sensitive attribute"},
      {"pairwise_test",
       "Mann-Whitney U normal approximation without continuity correction"},
      {"per_attribute_stability", "unavailable"},
      {"proportion_test",
       "one-sample z-test of the top-k protected share against p"},
      {"stability_method",
       "least-squares slope of scores min-max normalized over all ranked rows "
       "against rank position scaled to [0, 1]; stable iff |slope| > "
       "threshold"},
      {"tie_breaking", "equal scores are ordered by ascending row index"},
  };
}

// -- build ------------------------------------------------------------------

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename Fn>
void run_widget(const char* name, std::exception_ptr& failure, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    failure = std::make_exception_ptr(e.with_widget(name));
  } catch (...) {
    failure = std::current_exception();
  }
}

}  // namespace

NutritionalLabel build_label(const Dataset& dataset, const Ranking& ranking,
                             const std::string& sensitive,
                             const std::vector<std::string>& diversity_attrs,
                             const FairnessConfig& config,
                             const LabelOptions& options) {
  if (dataset.source_digest() != ranking.dataset_digest) {
    throw Error(ErrorCode::kInvalidArgument,
                "ranking was not computed from this dataset");
  }
  std::vector<std::string> diversity_list{sensitive};
  for (const auto& a : diversity_attrs) {
    if (std::find(diversity_list.begin(), diversity_list.end(), a) ==
        diversity_list.end()) {
      diversity_list.push_back(a);
    }
  }

  NutritionalLabel label;
  auto& md = label.metadata;
  md.dataset_digest = dataset.source_digest();
  md.row_count = ranking.size();
  md.dropped_rows = dataset.dropped_rows() + (dataset.row_count() - ranking.size());
  md.k = ranking.k;
  md.alpha = config.alpha;
  md.p_override = config.p;
  md.normalization = ranking.spec.normalization;
  md.weights = ranking.spec.weights;
  md.sensitive_attribute = sensitive;
  md.diversity_attributes = diversity_list;
  md.strength_threshold = options.strength_threshold;
  md.stability_threshold = options.stability_threshold;
  md.engine_version = std::string(kEngineVersion);
  md.methodology = methodology_notes();
  if (options.include_timestamp) md.generated_at = utc_timestamp();

  // Widgets are independent reads of immutable inputs.
  std::exception_ptr failures[5];
#pragma omp parallel sections
  {
#pragma omp section
    run_widget("recipe", failures[0],
               [&] { label.recipe = recipe(dataset, ranking); });
#pragma omp section
    run_widget("ingredients", failures[1], [&] {
      label.ingredients =
          ingredients(dataset, ranking, options.strength_threshold);
    });
#pragma omp section
    run_widget("stability", failures[2], [&] {
      label.stability = stability(ranking, options.stability_threshold);
    });
#pragma omp section
    run_widget("fairness", failures[3], [&] {
      label.fairness = fairness_suite(ranking, dataset, sensitive, config);
    });
#pragma omp section
    run_widget("diversity", failures[4], [&] {
      for (const auto& attr : diversity_list) {
        label.diversity.push_back(diversity_report(ranking, dataset, attr));
      }
    });
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return label;
}

// -- JSON -------------------------------------------------------------------

namespace {

Json stats_json(const ColumnStats& s) {
  Json j;
  j["minimum"] = s.minimum;
  j["maximum"] = s.maximum;
  j["median"] = s.median;
  j["count"] = s.count;
  j["missing"] = s.missing;
  return j;
}

void put_scoped(Json& j, const ScopedStats& s) {
  if (s.topk) j["stats_topk"] = stats_json(*s.topk);
  if (s.overall) j["stats_overall"] = stats_json(*s.overall);
}

Json details_json(const FairnessDetails& details) {
  Json j;
  if (const auto* d = std::get_if<FaIrDetails>(&details)) {
    j["alpha"] = d->alpha;
    j["adjusted_alpha"] = d->adjusted_alpha;
    j["p"] = d->p;
    j["k"] = d->k;
    j["protected_counts"] = d->protected_counts;
    j["min_counts"] = d->min_counts;
    if (d->first_failing_prefix) {
      j["first_failing_prefix"] = *d->first_failing_prefix;
    }
    j["cross_feature_correction"] = false;
  } else if (const auto* d = std::get_if<ProportionDetails>(&details)) {
    j["alpha"] = d->alpha;
    j["p"] = d->p;
    j["k"] = d->k;
    j["protected_in_topk"] = d->protected_in_topk;
    j["topk_proportion"] = d->topk_proportion;
    j["z"] = d->z;
  } else if (const auto* d = std::get_if<PairwiseDetails>(&details)) {
    j["alpha"] = d->alpha;
    j["n_protected"] = d->n_protected;
    j["n_other"] = d->n_other;
    j["pairs_total"] = d->pairs_total;
    j["pairs_protected_better"] = d->pairs_protected_better;
    j["z"] = d->z;
    j["continuity_correction"] = d->continuity_correction;
  }
  return j;
}

Json label_json(const NutritionalLabel& label) {
  Json root;
  root["label_schema"] = kLabelSchemaVersion;

  const auto& md = label.metadata;
  Json meta;
  meta["dataset_digest"] = md.dataset_digest;
  meta["row_count"] = md.row_count;
  meta["dropped_rows"] = md.dropped_rows;
  meta["k"] = md.k;
  meta["alpha"] = md.alpha;
  if (md.p_override) meta["p_override"] = *md.p_override;
  meta["normalization"] = normalization_name(md.normalization);
  meta["weights"] = Json::object();
  for (const auto& [name, w] : md.weights) meta["weights"][name] = w;
  meta["sensitive_attribute"] = md.sensitive_attribute;
  meta["diversity_attributes"] = md.diversity_attributes;
  meta["strength_threshold"] = md.strength_threshold;
  meta["stability_threshold"] = md.stability_threshold;
  meta["engine_version"] = md.engine_version;
  meta["methodology"] = Json::object();
  for (const auto& [key, note] : md.methodology) meta["methodology"][key] = note;
  if (md.generated_at) meta["generated_at"] = *md.generated_at;
  root["metadata"] = std::move(meta);

  Json recipe_entries = Json::array();
  for (const auto& e : label.recipe.entries) {
    Json j;
    j["attribute"] = e.attribute;
    j["weight"] = e.weight;
    j["share"] = e.share;
    put_scoped(j, e.stats);
    recipe_entries.push_back(std::move(j));
  }
  root["recipe"] = {{"entries", std::move(recipe_entries)}};

  Json ingredient_entries = Json::array();
  for (const auto& e : label.ingredients.entries) {
    Json j;
    j["attribute"] = e.attribute;
    j["importance"] = e.importance;
    j["correlation"] = e.correlation;
    j["strong"] = e.strong;
    put_scoped(j, e.stats);
    ingredient_entries.push_back(std::move(j));
  }
  Json ingredients;
  ingredients["strength_threshold"] = label.ingredients.strength_threshold;
  ingredients["entries"] = std::move(ingredient_entries);
  root["ingredients"] = std::move(ingredients);

  const auto& st = label.stability;
  Json stab;
  stab["slope_topk"] = st.slope_topk;
  stab["slope_overall"] = st.slope_overall;
  stab["stable_topk"] = st.stable_topk;
  stab["stable_overall"] = st.stable_overall;
  stab["threshold"] = st.threshold;
  root["stability"] = std::move(stab);

  Json fairness = Json::array();
  for (const auto& r : label.fairness) {
    Json j;
    j["measure"] = measure_name(r.measure);
    j["protected_attribute"] = r.feature.attribute;
    j["protected_value"] = r.feature.protected_value;
    j["statistic"] = r.statistic;
    if (r.p_value) j["p_value"] = *r.p_value;
    j["fair"] = r.fair;
    j["direction"] = direction_name(r.direction);
    j["details"] = details_json(r.details);
    fairness.push_back(std::move(j));
  }
  root["fairness"] = std::move(fairness);

  Json diversity = Json::array();
  for (const auto& d : label.diversity) {
    Json j;
    j["attribute"] = d.attribute;
    j["topk"] = Json::object();
    for (const auto& [cat, f] : d.proportions_topk) j["topk"][cat] = f;
    j["overall"] = Json::object();
    for (const auto& [cat, f] : d.proportions_overall) j["overall"][cat] = f;
    diversity.push_back(std::move(j));
  }
  root["diversity"] = std::move(diversity);
  return root;
}

ColumnStats parse_stats(const Json& j) {
  ColumnStats s;
  s.minimum = j.at("minimum").get<double>();
  s.maximum = j.at("maximum").get<double>();
  s.median = j.at("median").get<double>();
  s.count = j.at("count").get<std::size_t>();
  s.missing = j.at("missing").get<std::size_t>();
  return s;
}

ScopedStats parse_scoped(const Json& j) {
  ScopedStats s;
  if (j.contains("stats_topk")) s.topk = parse_stats(j["stats_topk"]);
  if (j.contains("stats_overall")) s.overall = parse_stats(j["stats_overall"]);
  return s;
}

FairnessDetails parse_details(FairnessMeasure m, const Json& j) {
  switch (m) {
    case FairnessMeasure::kFaIr: {
      FaIrDetails d;
      d.alpha = j.at("alpha").get<double>();
      d.adjusted_alpha = j.at("adjusted_alpha").get<double>();
      d.p = j.at("p").get<double>();
      d.k = j.at("k").get<std::size_t>();
      d.protected_counts =
          j.at("protected_counts").get<std::vector<std::size_t>>();
      d.min_counts = j.at("min_counts").get<std::vector<std::size_t>>();
      if (j.contains("first_failing_prefix")) {
        d.first_failing_prefix = j["first_failing_prefix"].get<std::size_t>();
      }
      return d;
    }
    case FairnessMeasure::kProportion: {
      ProportionDetails d;
      d.alpha = j.at("alpha").get<double>();
      d.p = j.at("p").get<double>();
      d.k = j.at("k").get<std::size_t>();
      d.protected_in_topk = j.at("protected_in_topk").get<std::size_t>();
      d.topk_proportion = j.at("topk_proportion").get<double>();
      d.z = j.at("z").get<double>();
      return d;
    }
    case FairnessMeasure::kPairwise: {
      PairwiseDetails d;
      d.alpha = j.at("alpha").get<double>();
      d.n_protected = j.at("n_protected").get<std::size_t>();
      d.n_other = j.at("n_other").get<std::size_t>();
      d.pairs_total = j.at("pairs_total").get<std::uint64_t>();
      d.pairs_protected_better =
          j.at("pairs_protected_better").get<std::uint64_t>();
      d.z = j.at("z").get<double>();
      d.continuity_correction = j.at("continuity_correction").get<bool>();
      return d;
    }
  }
  return FaIrDetails{};
}

std::map<std::string, double> parse_shares(const Json& j) {
  std::map<std::string, double> out;
  for (const auto& [cat, f] : j.items()) out.emplace(cat, f.get<double>());
  return out;
}

NutritionalLabel label_from_json(const Json& root) {
  if (root.at("label_schema").get<std::string>() != kLabelSchemaVersion) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported label_schema");
  }
  NutritionalLabel label;
  const Json& meta = root.at("metadata");
  auto& md = label.metadata;
  md.dataset_digest = meta.at("dataset_digest").get<std::string>();
  md.row_count = meta.at("row_count").get<std::size_t>();
  md.dropped_rows = meta.at("dropped_rows").get<std::size_t>();
  md.k = meta.at("k").get<std::size_t>();
  md.alpha = meta.at("alpha").get<double>();
  if (meta.contains("p_override")) md.p_override = meta["p_override"].get<double>();
  md.normalization =
      parse_normalization(meta.at("normalization").get<std::string>());
  for (const auto& [name, w] : meta.at("weights").items()) {
    md.weights.emplace(name, w.get<double>());
  }
  md.sensitive_attribute = meta.at("sensitive_attribute").get<std::string>();
  md.diversity_attributes =
      meta.at("diversity_attributes").get<std::vector<std::string>>();
  md.strength_threshold = meta.at("strength_threshold").get<double>();
  md.stability_threshold = meta.at("stability_threshold").get<double>();
  md.engine_version = meta.at("engine_version").get<std::string>();
  for (const auto& [key, note] : meta.at("methodology").items()) {
    md.methodology.emplace(key, note.get<std::string>());
  }
  if (meta.contains("generated_at")) {
    md.generated_at = meta["generated_at"].get<std::string>();
  }

  for (const auto& j : root.at("recipe").at("entries")) {
    RecipeEntry e;
    e.attribute = j.at("attribute").get<std::string>();
    e.weight = j.at("weight").get<double>();
    e.share = j.at("share").get<double>();
    e.stats = parse_scoped(j);
    label.recipe.entries.push_back(std::move(e));
  }

  const Json& ing = root.at("ingredients");
  label.ingredients.strength_threshold =
      ing.at("strength_threshold").get<double>();
  for (const auto& j : ing.at("entries")) {
    IngredientEntry e;
    e.attribute = j.at("attribute").get<std::string>();
    e.importance = j.at("importance").get<double>();
    e.correlation = j.at("correlation").get<double>();
    e.strong = j.at("strong").get<bool>();
    e.stats = parse_scoped(j);
    label.ingredients.entries.push_back(std::move(e));
  }

  const Json& st = root.at("stability");
  label.stability.slope_topk = st.at("slope_topk").get<double>();
  label.stability.slope_overall = st.at("slope_overall").get<double>();
  label.stability.stable_topk = st.at("stable_topk").get<bool>();
  label.stability.stable_overall = st.at("stable_overall").get<bool>();
  label.stability.threshold = st.at("threshold").get<double>();

  for (const auto& j : root.at("fairness")) {
    FairnessResult r;
    r.measure = parse_measure(j.at("measure").get<std::string>());
    r.feature.attribute = j.at("protected_attribute").get<std::string>();
    r.feature.protected_value = j.at("protected_value").get<std::string>();
    r.statistic = j.at("statistic").get<double>();
    if (j.contains("p_value")) r.p_value = j["p_value"].get<double>();
    r.fair = j.at("fair").get<bool>();
    r.direction = parse_direction(j.at("direction").get<std::string>());
    r.details = parse_details(r.measure, j.at("details"));
    label.fairness.push_back(std::move(r));
  }

  for (const auto& j : root.at("diversity")) {
    DiversityReport d;
    d.attribute = j.at("attribute").get<std::string>();
    d.proportions_topk = parse_shares(j.at("topk"));
    d.proportions_overall = parse_shares(j.at("overall"));
    label.diversity.push_back(std::move(d));
  }
  return label;
}

}  // namespace

std::string render_json(const NutritionalLabel& label) {
  return label_json(label).dump(2) + "\n";
}

NutritionalLabel parse_label(std::string_view json) {
  try {
    return label_from_json(Json::parse(json));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed label JSON: ") + e.what());
  }
}

// -- HTML -------------------------------------------------------------------

namespace {

// Numbers are printed exactly as in the JSON rendering.
std::string num(double v) { return Json(v).dump(); }
std::string num(std::size_t v) { return Json(v).dump(); }

std::string esc(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

constexpr const char* kStyle = R"css(
body{font-family:Helvetica,Arial,sans-serif;max-width:60em;margin:1em auto;color:#222}
h1{border-bottom:4px solid #222;padding-bottom:.2em}
section.widget{border:2px solid #222;margin:1em 0;padding:.5em 1em}
section.widget h2{margin:.2em 0}
table{border-collapse:collapse;margin:.5em 0}
td,th{border:1px solid #999;padding:.2em .5em;text-align:left}
.unfair,.unstable{color:#b00020;font-weight:bold}
.fair,.stable{color:#1b5e20;font-weight:bold}
summary{cursor:pointer;margin:.4em 0}
)css";

void stats_rows(std::ostringstream& out, const std::string& attribute,
                const ScopedStats& s) {
  const auto cells = [&](const char* scope, const std::optional<ColumnStats>& c) {
    out << "<tr><td>" << esc(attribute) << "</td><td>" << scope << "</td>";
    if (c) {
      out << "<td>" << num(c->minimum) << "</td><td>" << num(c->median)
          << "</td><td>" << num(c->maximum) << "</td><td>" << num(c->count)
          << "</td>";
    } else {
      out << "<td colspan=\"4\">no values</td>";
    }
    out << "</tr>\n";
  };
  cells("top-k", s.topk);
  cells("overall", s.overall);
}

void stats_table_head(std::ostringstream& out) {
  out << "<table><tr><th>attribute</th><th>scope</th><th>min</th>"
         "<th>median</th><th>max</th><th>count</th></tr>\n";
}

void open_section(std::ostringstream& out, const char* id, const char* title,
                  const std::string& extra_attrs = {}) {
  out << "<section class=\"widget\" id=\"widget-" << id << "\" data-widget=\""
      << id << "\"" << extra_attrs << ">\n<h2>" << title << "</h2>\n";
}

void write_fairness_details(std::ostringstream& out, const FairnessResult& r) {
  out << "<ul>";
  if (const auto* d = std::get_if<FaIrDetails>(&r.details)) {
    out << "<li>alpha: " << num(d->alpha) << "</li><li>adjusted alpha: "
        << num(d->adjusted_alpha) << "</li><li>p: " << num(d->p)
        << "</li><li>k: " << num(d->k) << "</li>";
    if (d->first_failing_prefix) {
      out << "<li>first failing prefix: " << num(*d->first_failing_prefix)
          << "</li>";
    }
    out << "</ul>\n<table><tr><th>prefix</th><th>protected</th>"
           "<th>minimum</th></tr>\n";
    for (std::size_t i = 0; i < d->protected_counts.size(); ++i) {
      const bool ok = d->protected_counts[i] >= d->min_counts[i];
      out << "<tr class=\"" << (ok ? "fair" : "unfair") << "\"><td>"
          << num(i + 1) << "</td><td>" << num(d->protected_counts[i])
          << "</td><td>" << num(d->min_counts[i]) << "</td></tr>\n";
    }
    out << "</table>\n";
    return;
  }
  if (const auto* d = std::get_if<ProportionDetails>(&r.details)) {
    out << "<li>alpha: " << num(d->alpha) << "</li><li>p: " << num(d->p)
        << "</li><li>k: " << num(d->k) << "</li><li>protected in top-k: "
        << num(d->protected_in_topk) << "</li><li>top-k proportion: "
        << num(d->topk_proportion) << "</li><li>z: " << num(d->z) << "</li>";
  } else if (const auto* d = std::get_if<PairwiseDetails>(&r.details)) {
    out << "<li>alpha: " << num(d->alpha) << "</li><li>protected items: "
        << num(d->n_protected) << "</li><li>other items: " << num(d->n_other)
        << "</li><li>pairs: " << Json(d->pairs_total).dump()
        << "</li><li>pairs won by protected: "
        << Json(d->pairs_protected_better).dump() << "</li><li>z: "
        << num(d->z) << "</li>";
  }
  out << "</ul>\n";
}

}  // namespace

std::string render_html(const NutritionalLabel& label) {
  const auto& md = label.metadata;
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n"
      << "<title>Ranking label</title>\n<style>" << kStyle << "</style>\n"
      << "</head>\n<body>\n<h1>Ranking Facts</h1>\n"
      << "<p class=\"metadata\">rows ranked: " << num(md.row_count)
      << ", rows dropped: " << num(md.dropped_rows) << ", k: " << num(md.k)
      << ", alpha: " << num(md.alpha) << ", normalization: "
      << esc(normalization_name(md.normalization)) << ", label schema "
      << esc(kLabelSchemaVersion) << ", engine " << esc(md.engine_version)
      << "</p>\n";

  // Recipe
  open_section(out, "recipe", "Recipe");
  out << "<div class=\"overview\"><table><tr><th>attribute</th><th>weight</th>"
         "<th>share</th></tr>\n";
  for (const auto& e : label.recipe.entries) {
    out << "<tr><td>" << esc(e.attribute) << "</td><td>" << num(e.weight)
        << "</td><td>" << num(e.share) << "</td></tr>\n";
  }
  out << "</table></div>\n<details><summary>Attribute statistics</summary>\n";
  stats_table_head(out);
  for (const auto& e : label.recipe.entries) stats_rows(out, e.attribute, e.stats);
  out << "</table>\n</details>\n</section>\n";

  // Ingredients
  open_section(out, "ingredients", "Ingredients");
  out << "<div class=\"overview\"><table><tr><th>attribute</th>"
         "<th>importance</th><th>correlation</th><th>strong</th></tr>\n";
  for (const auto& e : label.ingredients.entries) {
    out << "<tr data-strong=\"" << yes_no(e.strong) << "\"><td>"
        << esc(e.attribute) << "</td><td>" << num(e.importance) << "</td><td>"
        << num(e.correlation) << "</td><td>" << yes_no(e.strong)
        << "</td></tr>\n";
  }
  out << "</table><p>strong at importance &gt;= "
      << num(label.ingredients.strength_threshold)
      << "</p></div>\n<details><summary>Attribute statistics</summary>\n";
  stats_table_head(out);
  for (const auto& e : label.ingredients.entries) {
    if (e.strong) stats_rows(out, e.attribute, e.stats);
  }
  out << "</table>\n</details>\n</section>\n";

  // Stability
  const auto& st = label.stability;
  const bool stable = st.stable_topk && st.stable_overall;
  open_section(out, "stability", "Stability",
               std::string(" data-verdict=\"") +
                   (stable ? "stable" : "unstable") + "\"");
  out << "<div class=\"overview\"><p>top-k: <span class=\""
      << (st.stable_topk ? "stable" : "unstable") << "\">"
      << (st.stable_topk ? "stable" : "unstable")
      << "</span>, overall: <span class=\""
      << (st.stable_overall ? "stable" : "unstable") << "\">"
      << (st.stable_overall ? "stable" : "unstable")
      << "</span></p></div>\n<details><summary>Slopes</summary>\n"
      << "<table><tr><th>scope</th><th>slope</th></tr>\n<tr><td>top-k</td><td>"
      << num(st.slope_topk) << "</td></tr>\n<tr><td>overall</td><td>"
      << num(st.slope_overall) << "</td></tr>\n</table>\n<p>unstable when "
      << "|slope| &lt;= " << num(st.threshold) << "</p>\n</details>\n</section>\n";

  // Fairness
  const bool all_fair =
      std::all_of(label.fairness.begin(), label.fairness.end(),
                  [](const FairnessResult& r) { return r.fair; });
  open_section(out, "fairness", "Fairness",
               std::string(" data-verdict=\"") + (all_fair ? "fair" : "unfair") +
                   "\"");
  out << "<div class=\"overview\"><table><tr><th>protected feature</th>"
         "<th>measure</th><th>verdict</th></tr>\n";
  for (const auto& r : label.fairness) {
    out << "<tr data-fair=\"" << yes_no(r.fair) << "\"><td>"
        << esc(r.feature.attribute) << "=" << esc(r.feature.protected_value)
        << "</td><td>" << esc(measure_name(r.measure))
        << "</td><td class=\"" << (r.fair ? "fair" : "unfair") << "\">"
        << (r.fair ? "fair" : "unfair") << "</td></tr>\n";
  }
  out << "</table></div>\n<details><summary>Test details</summary>\n";
  for (const auto& r : label.fairness) {
    out << "<div class=\"fairness-test\" data-fair=\"" << yes_no(r.fair)
        << "\"><h3>" << esc(measure_name(r.measure)) << ", "
        << esc(r.feature.attribute) << "=" << esc(r.feature.protected_value)
        << "</h3>\n<p>statistic: " << num(r.statistic);
    if (r.p_value) out << ", p-value: " << num(*r.p_value);
    out << ", direction: " << esc(direction_name(r.direction)) << "</p>\n";
    write_fairness_details(out, r);
    out << "</div>\n";
  }
  out << "</details>\n</section>\n";

  // Diversity, one widget per scope.
  const auto diversity_section = [&](const char* id, const char* title,
                                     bool topk) {
    open_section(out, id, title);
    out << "<div class=\"overview\">";
    for (const auto& d : label.diversity) {
      const auto& shares = topk ? d.proportions_topk : d.proportions_overall;
      const auto top = std::max_element(
          shares.begin(), shares.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      out << "<p>" << esc(d.attribute) << ": largest category "
          << esc(top->first) << " at " << num(top->second) << "</p>";
    }
    out << "</div>\n<details><summary>Category proportions</summary>\n";
    for (const auto& d : label.diversity) {
      const auto& shares = topk ? d.proportions_topk : d.proportions_overall;
      out << "<table data-attribute=\"" << esc(d.attribute) << "\"><tr><th>"
          << esc(d.attribute) << "</th><th>proportion</th></tr>\n";
      for (const auto& [cat, f] : shares) {
        out << "<tr><td>" << esc(cat) << "</td><td>" << num(f)
            << "</td></tr>\n";
      }
      out << "</table>\n";
    }
    out << "</details>\n</section>\n";
  };
  diversity_section("diversity-topk", "Diversity at top-k", true);
  diversity_section("diversity-overall", "Diversity overall", false);

  out << "<footer>\n<p>dataset " << esc(md.dataset_digest)
      << "</p>\n<details><summary>Methodology</summary>\n<table>\n";
  for (const auto& [key, note] : md.methodology) {
    out << "<tr><th>" << esc(key) << "</th><td>" << esc(note) << "</td></tr>\n";
  }
  out << "</table>\n</details>\n</footer>\n</body>\n</html>\n";
  return out.str();
}

}  // namespace ranklabel
