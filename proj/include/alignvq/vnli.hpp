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

// End-to-end visual entailment scoring through a yes/no prompt, and the
// two-scorer averaging ensemble.

#ifndef ALIGNVQ_VNLI_HPP_
#define ALIGNVQ_VNLI_HPP_

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"
#include "alignvq/scorer.hpp"

namespace alignvq {

inline constexpr std::string_view kDefaultVnliPrompt =
    "Does this image entail the description: {text}?";

struct VnliConfig {
  std::string prompt_template{kDefaultVnliPrompt};
  std::string scorer_id = "vnli";

  /// The template must contain "{text}" exactly once.
  void validate() const;
};

void to_json(nlohmann::json& j, const VnliConfig& v);
void from_json(const nlohmann::json& j, VnliConfig& v);

std::string render_vnli_prompt(const VnliConfig& cfg, std::string_view text);

/// p_yes / (p_yes + p_no); Error(kDegenerateProbabilities) when both are 0.
double yes_ratio(const YesNoProbabilities& p);

AlignmentResult vnli_score(ModelBackend& backend, const TextImagePair& pair,
                           const VnliConfig& cfg);

/// Mean of two results for the same pair; scorer_id "avg(a,b)".
/// Throws Error(kPairMismatch) when pair ids differ.
AlignmentResult ensemble_score(const AlignmentResult& a,
                               const AlignmentResult& b);

class VnliScorer : public AlignmentScorer {
 public:
  VnliScorer(std::shared_ptr<ModelBackend> backend, VnliConfig cfg);

  std::string scorer_id() const override { return cfg_.scorer_id; }
  std::string config_digest() const override;
  AlignmentResult score(const TextImagePair& pair) override;

 private:
  std::shared_ptr<ModelBackend> backend_;
  VnliConfig cfg_;
};

class EnsembleScorer : public AlignmentScorer {
 public:
  EnsembleScorer(std::shared_ptr<AlignmentScorer> first,
                 std::shared_ptr<AlignmentScorer> second);

  std::string scorer_id() const override;
  std::string config_digest() const override;
  AlignmentResult score(const TextImagePair& pair) override;

 private:
  std::shared_ptr<AlignmentScorer> first_;
  std::shared_ptr<AlignmentScorer> second_;
};

}  // namespace alignvq

#endif  // ALIGNVQ_VNLI_HPP_
