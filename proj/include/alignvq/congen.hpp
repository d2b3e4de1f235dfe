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

// Contradicting-caption generation: few-shot prompt an LLM for minimally
// edited captions, score each against the original with NLI, keep one.

#ifndef ALIGNVQ_CONGEN_HPP_
#define ALIGNVQ_CONGEN_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"

namespace alignvq {

enum class Polarity { kPositive, kNegative };

struct Exemplar {
  std::string caption;
  std::string rewrite;
  // Positive: the rewrite contradicts the caption. Negative: it does not
  // (paraphrase or compatible detail), shown as what to avoid.
  Polarity polarity = Polarity::kPositive;

  bool operator==(const Exemplar&) const = default;
};

enum class Selection { kMaxContradiction, kMinEntailment };

std::string_view selection_name(Selection s);
Selection parse_selection(std::string_view name);

/// The shipped few-shot set: 7 positive and 8 negative exemplars, written
/// for this project.
const std::vector<Exemplar>& default_exemplars();

/// Reads a JSON array of {"caption", "rewrite", "polarity"}.
std::vector<Exemplar> load_exemplars(const std::filesystem::path& path);

struct ConGenConfig {
  int n_candidates = 8;
  std::vector<Exemplar> exemplars = default_exemplars();
  Selection selection = Selection::kMaxContradiction;

  void validate() const;
};

struct ScoredCandidate {
  std::string caption;
  NliResponse nli;

  bool operator==(const ScoredCandidate&) const = default;
};

struct ConGenOutput {
  std::string original;
  std::string chosen;
  std::vector<ScoredCandidate> candidates;
  double selection_score = 0.0;

  bool operator==(const ConGenOutput&) const = default;
};

void to_json(nlohmann::json& j, const ConGenOutput& v);
void from_json(const nlohmann::json& j, ConGenOutput& v);

/// Exemplars in configured order, then the target caption; deterministic.
/// Throws Error(kEmptyText) for an empty caption.
std::string render_congen_prompt(std::string_view caption,
                                 const ConGenConfig& cfg);

/// Number of exemplar blocks in a rendered prompt.
std::size_t count_prompt_exemplars(std::string_view prompt);

/// Trims, drops empties and case-insensitive copies of the original, and
/// deduplicates keeping first occurrences.
std::vector<std::string> clean_candidates(std::string_view original,
                                          const std::vector<std::string>& raw);

/// Index chosen under the selection rule; earliest candidate wins ties.
std::size_t select_candidate(const std::vector<ScoredCandidate>& candidates,
                             Selection selection);

/// Throws Error(kNoValidCandidates) when cleaning leaves nothing.
ConGenOutput generate_contradiction(ModelBackend& backend,
                                    std::string_view caption,
                                    const ConGenConfig& cfg,
                                    std::size_t parallelism = 1);

}  // namespace alignvq

#endif  // ALIGNVQ_CONGEN_HPP_
