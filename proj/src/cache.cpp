// Copyright 2026 The AlignVQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "alignvq/cache.hpp"

#include <chrono>
#include <system_error>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "alignvq/dataset_io.hpp"
#include "alignvq/digest.hpp"
#include "alignvq/error.hpp"

namespace alignvq {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string safe_component(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::string result_digest(const AlignmentResult& result) {
  return canonical_digest(json(result));
}

}  // namespace

std::string cache_key(std::string_view scorer_id, std::string_view config_digest,
                      std::string_view text, const ImageRef& image) {
  return canonical_digest(json{{"scorer_id", scorer_id},
                               {"config_digest", config_digest},
                               {"text", text},
                               {"image", image_identity(image)}});
}

ScoreCache::ScoreCache(fs::path root) : root_(std::move(root)) {}

fs::path ScoreCache::entry_path(std::string_view scorer_id,
                                std::string_view key) const {
  if (key.size() < 2) {
    throw Error(ErrorCode::kPrecondition, "cache key is too short");
  }
  return root_ / safe_component(scorer_id) / std::string(key.substr(0, 2)) /
         (std::string(key) + ".json");
}

std::optional<AlignmentResult> ScoreCache::get(std::string_view scorer_id,
                                               std::string_view key) {
  const fs::path path = entry_path(scorer_id, key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    const json entry = json::parse(read_file(path));
    if (entry.at("key").get<std::string>() != key) {
      throw Error(ErrorCode::kCacheCorrupt, "key does not match file name");
    }
    auto result = entry.at("result").get<AlignmentResult>();
    if (result_digest(result) != entry.at("digest").get<std::string>()) {
      throw Error(ErrorCode::kCacheCorrupt, "result digest mismatch");
    }
    return result;
  } catch (const std::exception& e) {
    const Error err(ErrorCode::kCacheCorrupt,
                    path.string() + ": discarding entry (" + e.what() + ")");
    spdlog::warn("{}", err.what());
    ++corrupt_;
    fs::remove(path, ec);
    return std::nullopt;
  }
}

void ScoreCache::put(std::string_view scorer_id, std::string_view key,
                     const AlignmentResult& result) {
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const json entry{{"key", key},
                   {"created_at", now},
                   {"digest", result_digest(result)},
                   {"result", result}};
  write_file_atomic(entry_path(scorer_id, key), entry.dump());
}

CachedScorer::CachedScorer(std::shared_ptr<AlignmentScorer> inner,
                           std::shared_ptr<ScoreCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)),
      config_digest_(inner_->config_digest()) {}

AlignmentResult CachedScorer::score(const TextImagePair& pair) {
  const std::string id = inner_->scorer_id();
  const std::string key = cache_key(id, config_digest_, pair.text, pair.image);
  if (auto hit = cache_->get(id, key)) {
    ++hits_;
    hit->pair_id = pair.pair_id;
    return *hit;
  }
  ++misses_;
  AlignmentResult result = inner_->score(pair);
  cache_->put(id, key, result);
  return result;
}

}  // namespace alignvq
