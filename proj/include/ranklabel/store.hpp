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

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ranklabel/dataset.hpp"
#include "ranklabel/request.hpp"

namespace ranklabel {

// Content-addressed, file-backed store of uploaded datasets and generated
// labels. Layout under the root:
//
//   datasets/<id>.csv          raw upload bytes
//   rankings/<id>.json         {"dataset_id", "request", "preview"}
//   rankings/<id>.label.json   label JSON exactly as served
//
// Files are written to a temporary name and renamed into place, so readers
// never observe a partial file. The in-memory index is guarded by a mutex;
// computation happens outside the lock.
class SessionStore {
 public:
  static constexpr std::size_t kIdLength = 16;

  struct StoredDataset {
    std::string id;
    std::shared_ptr<const Dataset> dataset;
    bool created = false;
  };

  struct StoredRanking {
    std::string id;
    std::string dataset_id;
    nlohmann::ordered_json request;
    nlohmann::ordered_json preview;
    std::string label_json;
  };

  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  static std::string dataset_id_for(std::string_view csv_bytes);
  static std::string ranking_id_for(std::string_view dataset_id,
                                    const RankingRequest& request);
  static bool is_valid_id(std::string_view id);

  // Parses the CSV (throws Error on bad input) and persists it if new.
  StoredDataset put_dataset(std::string_view csv_bytes);
  std::shared_ptr<const Dataset> dataset(const std::string& id);
  std::vector<std::string> dataset_ids() const;

  // Throws Error(kNotFound) for an unknown dataset, RequestError / Error
  // for requests the dataset cannot satisfy.
  std::shared_ptr<const StoredRanking> put_ranking(
      const std::string& dataset_id, const RankingRequest& request);
  std::shared_ptr<const StoredRanking> ranking(const std::string& id);

 private:
  std::filesystem::path dataset_path(const std::string& id) const;
  std::filesystem::path ranking_path(const std::string& id) const;
  std::filesystem::path label_path(const std::string& id) const;
  void write_atomic(const std::filesystem::path& target,
                    std::string_view bytes);

  std::filesystem::path root_;
  mutable std::mutex mutex_;
  std::set<std::string> known_datasets_;
  std::set<std::string> known_rankings_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::map<std::string, std::shared_ptr<const StoredRanking>> rankings_;
  std::uint64_t temp_counter_ = 0;
};

}  // namespace ranklabel
