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

#include "ranklabel/store.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "ranklabel/digest.hpp"
#include "ranklabel/error.hpp"

namespace ranklabel {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kNotFound, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Ids of files named <id><suffix> directly under `dir`.
std::set<std::string> scan(const fs::path& dir, std::string_view suffix) {
  std::set<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() != SessionStore::kIdLength + suffix.size()) continue;
    if (name.compare(SessionStore::kIdLength, suffix.size(), suffix) != 0) {
      continue;
    }
    const std::string id = name.substr(0, SessionStore::kIdLength);
    if (SessionStore::is_valid_id(id)) ids.insert(id);
  }
  return ids;
}

}  // namespace

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "datasets");
  fs::create_directories(root_ / "rankings");
  fs::create_directories(root_ / "tmp");
  known_datasets_ = scan(root_ / "datasets", ".csv");
  const auto labels = scan(root_ / "rankings", ".label.json");
  for (const auto& id : scan(root_ / "rankings", ".json")) {
    if (labels.count(id)) known_rankings_.insert(id);
  }
}

std::string SessionStore::dataset_id_for(std::string_view csv_bytes) {
  return sha256_hex(csv_bytes).substr(0, kIdLength);
}

std::string SessionStore::ranking_id_for(std::string_view dataset_id,
                                         const RankingRequest& request) {
  const std::string key =
      std::string(dataset_id) + "\n" + request_json(request).dump();
  return sha256_hex(key).substr(0, kIdLength);
}

bool SessionStore::is_valid_id(std::string_view id) {
  if (id.size() != kIdLength) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

fs::path SessionStore::dataset_path(const std::string& id) const {
  return root_ / "datasets" / (id + ".csv");
}
fs::path SessionStore::ranking_path(const std::string& id) const {
  return root_ / "rankings" / (id + ".json");
}
fs::path SessionStore::label_path(const std::string& id) const {
  return root_ / "rankings" / (id + ".label.json");
}

void SessionStore::write_atomic(const fs::path& target,
                                std::string_view bytes) {
  std::uint64_t n = 0;
  {
    std::lock_guard lock(mutex_);
    n = ++temp_counter_;
  }
  const fs::path tmp = root_ / "tmp" /
                       (target.filename().string() + "." +
                        std::to_string(::getpid()) + "." + std::to_string(n));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("failed to write " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

SessionStore::StoredDataset SessionStore::put_dataset(
    std::string_view csv_bytes) {
  const std::string id = dataset_id_for(csv_bytes);
  if (auto existing = dataset(id)) return {id, std::move(existing), false};

  auto parsed = std::make_shared<const Dataset>(load_csv(csv_bytes));
  write_atomic(dataset_path(id), csv_bytes);
  std::lock_guard lock(mutex_);
  const bool created = known_datasets_.insert(id).second;
  auto [it, inserted] = datasets_.try_emplace(id, parsed);
  return {id, it->second, created};
}

std::shared_ptr<const Dataset> SessionStore::dataset(const std::string& id) {
  if (!is_valid_id(id)) return nullptr;
  {
    std::lock_guard lock(mutex_);
    if (auto it = datasets_.find(id); it != datasets_.end()) return it->second;
    if (!known_datasets_.count(id)) return nullptr;
  }
  auto parsed = std::make_shared<const Dataset>(load_csv(read_file(dataset_path(id))));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = datasets_.try_emplace(id, parsed);
  return it->second;
}

std::vector<std::string> SessionStore::dataset_ids() const {
  std::lock_guard lock(mutex_);
  return {known_datasets_.begin(), known_datasets_.end()};
}

std::shared_ptr<const SessionStore::StoredRanking> SessionStore::put_ranking(
    const std::string& dataset_id, const RankingRequest& request) {
  auto ds = dataset(dataset_id);
  if (!ds) {
    throw Error(ErrorCode::kNotFound, "unknown dataset '" + dataset_id + "'");
  }
  const std::string id = ranking_id_for(dataset_id, request);
  if (auto existing = ranking(id)) return existing;

  const RankingOutcome outcome = run_request(*ds, request);
  auto stored = std::make_shared<StoredRanking>();
  stored->id = id;
  stored->dataset_id = dataset_id;
  stored->request = request_json(request);
  stored->preview = preview_json(outcome.retained, outcome.ranking);
  stored->label_json = render_json(outcome.label);

  nlohmann::ordered_json meta;
  meta["dataset_id"] = dataset_id;
  meta["request"] = stored->request;
  meta["preview"] = stored->preview;
  // Label first: a ranking is only listed once both files exist.
  write_atomic(label_path(id), stored->label_json);
  write_atomic(ranking_path(id), meta.dump(2) + "\n");

  std::lock_guard lock(mutex_);
  known_rankings_.insert(id);
  auto [it, inserted] = rankings_.try_emplace(id, std::move(stored));
  return it->second;
}

std::shared_ptr<const SessionStore::StoredRanking> SessionStore::ranking(
    const std::string& id) {
  if (!is_valid_id(id)) return nullptr;
  {
    std::lock_guard lock(mutex_);
    if (auto it = rankings_.find(id); it != rankings_.end()) return it->second;
    if (!known_rankings_.count(id)) return nullptr;
  }
  const auto meta = nlohmann::ordered_json::parse(read_file(ranking_path(id)));
  auto stored = std::make_shared<StoredRanking>();
  stored->id = id;
  stored->dataset_id = meta.at("dataset_id").get<std::string>();
  stored->request = meta.at("request");
  stored->preview = meta.at("preview");
  stored->label_json = read_file(label_path(id));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = rankings_.try_emplace(id, std::move(stored));
  return it->second;
}

}  // namespace ranklabel
