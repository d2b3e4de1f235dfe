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


#include "alignvq/rerank.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "alignvq/error.hpp"
#include "alignvq/parallel.hpp"

namespace alignvq {

std::vector<std::size_t> rank_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::vector<RankedCandidate> rank_candidates(
    std::string_view prompt, const std::vector<ImageRef>& candidates,
    AlignmentScorer& scorer, std::size_t parallelism) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kPrecondition, "no candidates to rank");
  }
  const auto scores =
      parallel_map(candidates.size(), parallelism, [&](std::size_t i) {
        TextImagePair pair;
        pair.text = std::string(prompt);
        pair.image = candidates[i];
        return scorer.score(validate_pair(std::move(pair))).score;
      });
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (std::size_t i : rank_order(scores)) {
    out.push_back({i, candidates[i], scores[i]});
  }
  return out;
}

double top1_quality(const std::vector<std::vector<RankedCandidate>>& ranked,
                    const std::vector<std::vector<int>>& labels) {
  if (ranked.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "ranked batches and label batches differ in length");
  }
  if (ranked.empty()) {
    throw Error(ErrorCode::kPrecondition, "no prompts to evaluate");
  }
  std::size_t good = 0;
  for (std::size_t p = 0; p < ranked.size(); ++p) {
    if (ranked[p].empty()) {
      throw Error(ErrorCode::kPrecondition,
                  "prompt " + std::to_string(p) + " has no candidates");
    }
    const std::size_t top = ranked[p].front().index;
    if (top >= labels[p].size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "prompt " + std::to_string(p) + " is missing labels");
    }
    good += labels[p][top] == 1;
  }
  return static_cast<double>(good) / static_cast<double>(ranked.size());
}

}  // namespace alignvq
