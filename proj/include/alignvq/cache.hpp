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


// Persistent, content-addressed cache of alignment results, one JSON file per
// entry under <root>/<scorer_id>/<2-hex prefix>/<key>.json.

#ifndef ALIGNVQ_CACHE_HPP_
#define ALIGNVQ_CACHE_HPP_

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "alignvq/scorer.hpp"
#include "alignvq/types.hpp"

namespace alignvq {

/// Digest of (scorer_id, scorer config digest, text, image identity).
std::string cache_key(std::string_view scorer_id, std::string_view config_digest,
                      std::string_view text, const ImageRef& image);

/// One writer and many readers per directory. Writes are atomic renames, so
/// a crash leaves either the old state or a complete entry.
class ScoreCache {
 public:
  explicit ScoreCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  std::filesystem::path entry_path(std::string_view scorer_id,
                                   std::string_view key) const;

  /// Absent on a miss. An entry that fails to parse or whose digest does not
  /// match is deleted, logged as CacheCorrupt and reported as a miss.
  std::optional<AlignmentResult> get(std::string_view scorer_id,
                                     std::string_view key);

  void put(std::string_view scorer_id, std::string_view key,
           const AlignmentResult& result);

  std::size_t corrupt_entries() const { return corrupt_.load(); }

 private:
  std::filesystem::path root_;
  std::atomic<std::size_t> corrupt_{0};
};

/// Serves results from the cache and scores only on a miss.
class CachedScorer : public AlignmentScorer {
 public:
  CachedScorer(std::shared_ptr<AlignmentScorer> inner,
               std::shared_ptr<ScoreCache> cache);

  std::string scorer_id() const override { return inner_->scorer_id(); }
  std::string config_digest() const override { return inner_->config_digest(); }
  AlignmentResult score(const TextImagePair& pair) override;

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  std::shared_ptr<AlignmentScorer> inner_;
  std::shared_ptr<ScoreCache> cache_;
  std::string config_digest_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace alignvq

#endif  // ALIGNVQ_CACHE_HPP_
