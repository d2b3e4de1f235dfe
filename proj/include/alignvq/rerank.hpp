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


// Re-ranking of generated image candidates per prompt, and top-1 quality
// against human labels.

#ifndef ALIGNVQ_RERANK_HPP_
#define ALIGNVQ_RERANK_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "alignvq/scorer.hpp"
#include "alignvq/types.hpp"

namespace alignvq {

struct RankedCandidate {
  std::size_t index = 0;  // position in the input list
  ImageRef image;
  double score = 0.0;

  bool operator==(const RankedCandidate&) const = default;
};

/// Indices sorted by descending score; ties keep input order.
std::vector<std::size_t> rank_order(const std::vector<double>& scores);

/// Scores every candidate against the prompt and returns them best first.
/// Throws Error(kPrecondition) for an empty candidate list.
std::vector<RankedCandidate> rank_candidates(std::string_view prompt,
                                             const std::vector<ImageRef>& candidates,
                                             AlignmentScorer& scorer,
                                             std::size_t parallelism = 1);

/// Fraction of prompts whose top-ranked candidate is labeled 1.
/// labels[p][i] is the label of input candidate i of prompt p.
double top1_quality(const std::vector<std::vector<RankedCandidate>>& ranked,
                    const std::vector<std::vector<int>>& labels);

}  // namespace alignvq

#endif  // ALIGNVQ_RERANK_HPP_
