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

// Answer-candidate extraction from a caption's linguistic annotation.
//
// Base candidates are named entities and noun chunks. Extended mode adds
// adjectival runs (ADJ (CCONJ ADJ)*, e.g. "black and white") and
// preposition-headed subtrees ("on some grass", "in the air").
//
// Selection: candidates are taken in priority order (entities, noun chunks,
// extended), each group in textual order; duplicates by case-insensitive
// surface keep the first one seen; pronoun-only and determiner-only spans
// are dropped; the first max_candidates survive and are returned sorted by
// position.

#ifndef ALIGNVQ_SPANS_HPP_
#define ALIGNVQ_SPANS_HPP_

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"
#include "alignvq/types.hpp"

namespace alignvq {

struct SpanConfig {
  bool include_named_entities = true;
  bool include_noun_phrases = true;
  bool extended_spans = true;
  int max_candidates = 16;

  /// Throws Error(kInvalidConfig) when max_candidates < 1.
  void validate() const;
};

void to_json(nlohmann::json& j, const SpanConfig& v);
void from_json(const nlohmann::json& j, SpanConfig& v);

std::vector<AnswerSpan> extract_candidates(const Annotation& annotation,
                                           std::string_view text,
                                           const SpanConfig& cfg);

/// Annotates `text` through the backend, then extracts.
std::vector<AnswerSpan> extract_candidates(ModelBackend& backend,
                                           std::string_view text,
                                           const SpanConfig& cfg);

}  // namespace alignvq

#endif  // ALIGNVQ_SPANS_HPP_
