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

#include "ranklabel/cli.hpp"

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ranklabel/error.hpp"
#include "ranklabel/label.hpp"
#include "ranklabel/request.hpp"
#include "ranklabel/service.hpp"

namespace ranklabel {

namespace {

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kNotFound, "cannot open input '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& path,
                  const std::string& bytes, std::ostream& out) {
  if (!path || *path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  file << bytes;
  if (!file) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot write output '" + *path + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Service* g_running_service = nullptr;

extern "C" void handle_stop_signal(int) {
  if (g_running_service) g_running_service->stop();
}

struct LabelArgs {
  std::string input;
  std::string weights;
  std::string normalize;
  std::string sensitive;
  std::string diversity;
  std::size_t k = kDefaultTopK;
  double alpha = kDefaultAlpha;
  std::optional<double> p;
  std::string format;
  std::optional<std::string> out;
  bool timestamp = false;
};

struct StatsArgs {
  std::string input;
  std::optional<std::string> attr;
};

struct ServeArgs {
  std::optional<int> port;
  std::optional<std::string> data_dir;
};

int run_label(const LabelArgs& a, std::ostream& out) {
  RankingRequest req;
  req.weights = parse_weights(a.weights);
  req.normalization = parse_normalization(a.normalize);
  req.sensitive_attribute = a.sensitive;
  req.diversity_attributes = split_list(a.diversity);
  req.k = a.k;
  req.alpha = a.alpha;
  req.p = a.p;

  const Dataset dataset = load_csv(read_input(a.input));
  LabelOptions options;
  options.include_timestamp = a.timestamp;
  const RankingOutcome outcome = run_request(dataset, req, options);
  write_output(a.out,
               a.format == "html" ? render_html(outcome.label)
                                  : render_json(outcome.label),
               out);
  return kExitOk;
}

int run_stats(const StatsArgs& a, std::ostream& out) {
  const Dataset dataset = load_csv(read_input(a.input));
  nlohmann::ordered_json j;
  if (a.attr) {
    j = describe_column(dataset, dataset.column(*a.attr));
  } else {
    j = describe_dataset(dataset);
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

int run_serve(const ServeArgs& a, std::ostream& err) {
  ServiceConfig config;
  if (a.port) {
    config.port = *a.port;
  } else if (const char* env = std::getenv("RANKLABEL_PORT")) {
    const auto v = parse_decimal(env);
    if (!v || *v < 0 || *v > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "RANKLABEL_PORT is not a port");
    }
    config.port = static_cast<int>(*v);
  }
  if (a.data_dir) {
    config.data_dir = *a.data_dir;
  } else if (const char* env = std::getenv("RANKLABEL_DATA_DIR")) {
    config.data_dir = env;
  }
  if (const char* ui = std::getenv("RANKLABEL_UI_DIR")) config.ui_dir = ui;

  Service service(config);
  const int port = service.bind();
  err << "ranklabel: serving on " << config.host << ":" << port
      << " with data in " << config.data_dir.string() << std::endl;
  g_running_service = &service;
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  service.listen();
  g_running_service = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Ranking transparency labels for tabular data", "ranklabel"};
  app.require_subcommand(1);

  LabelArgs label_args;
  auto* label = app.add_subcommand("label", "rank a CSV and write its label");
  label->add_option("--input", label_args.input, "CSV file")->required();
  label->add_option("--weights", label_args.weights, "a=w[,b=w...]")->required();
  label->add_option("--normalize", label_args.normalize, "normalization mode")
      ->required()
      ->check(CLI::IsMember({"none", "minmax", "zscore"}));
  label->add_option("--sensitive", label_args.sensitive,
                    "binary categorical attribute")
      ->required();
  label->add_option("--diversity", label_args.diversity,
                    "extra categorical attributes, comma separated");
  label->add_option("--k", label_args.k, "top-k size")
      ->check(CLI::PositiveNumber);
  label->add_option("--alpha", label_args.alpha, "significance level")
      ->check(CLI::Range(0.0, 1.0));
  label->add_option("--p", label_args.p, "protected proportion override")
      ->check(CLI::Range(0.0, 1.0));
  label->add_option("--format", label_args.format, "json or html")
      ->required()
      ->check(CLI::IsMember({"json", "html"}));
  label->add_option("--out", label_args.out, "output path (default stdout)");
  label->add_flag("--timestamp", label_args.timestamp,
                  "record generation time in the label");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "print schema and statistics");
  stats->add_option("--input", stats_args.input, "CSV file")->required();
  stats->add_option("--attr", stats_args.attr, "single attribute");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--port", serve_args.port, "listen port")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", serve_args.data_dir, "storage directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ranklabel: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (label->parsed()) {
      // Malformed --weights text is a usage error, not a data error.
      try {
        parse_weights(label_args.weights);
      } catch (const Error& e) {
        err << "ranklabel: " << e.what() << "\n" << label->help();
        return kExitUsage;
      }
      return run_label(label_args, out);
    }
    if (stats->parsed()) return run_stats(stats_args, out);
    if (serve->parsed()) return run_serve(serve_args, err);
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what();
    if (e.widget()) err << " (widget " << *e.widget() << ")";
    err << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace ranklabel
