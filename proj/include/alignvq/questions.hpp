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

#ifndef ALIGNVQ_QUESTIONS_HPP_
#define ALIGNVQ_QUESTIONS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"
#include "alignvq/types.hpp"

namespace alignvq {

inline constexpr double kDefaultF1Threshold = 0.54;

struct QgConfig {
  double f1_threshold = kDefaultF1Threshold;
  int max_questions = 16;

  void validate() const;
};

void to_json(nlohmann::json& j, const QgConfig& v);
void from_json(const nlohmann::json& j, QgConfig& v);

/// Reading-comprehension answer normalization: lowercase, drop ASCII
/// punctuation, drop the articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view s);

/// Bag-of-tokens F1 between normalized answers. Both empty gives 1.0,
/// exactly one empty gives 0.0.
double token_f1(std::string_view prediction, std::string_view gold);

/// Generates and round-trip checks one question per span, keeping input
/// order. Every pair is returned with its `kept` flag set.
std::vector<QAPair> generate_qa_pairs(ModelBackend& backend,
                                      std::string_view text,
                                      std::span<const AnswerSpan> spans,
                                      const QgConfig& cfg,
                                      std::size_t parallelism = 1);

/// Kept pairs only, in span order, at most cfg.max_questions.
std::vector<QAPair> build_qa_pairs(ModelBackend& backend, std::string_view text,
                                   std::span<const AnswerSpan> spans,
                                   const QgConfig& cfg,
                                   std::size_t parallelism = 1);

/// Applies the threshold filter to already round-tripped pairs.
std::vector<QAPair> filter_qa_pairs(std::vector<QAPair> pairs,
                                    const QgConfig& cfg);

}  // namespace alignvq

#endif  // ALIGNVQ_QUESTIONS_HPP_
