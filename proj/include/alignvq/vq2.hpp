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

// VQ² alignment scoring.
//
// A caption is turned into validated question-answer pairs (spans.hpp,
// questions.hpp); each pair is checked against the image by one of three
// answer-alignment variants and the pair score is the mean of the per-pair
// scores s_j:
//
//   A  a_I = VQA(q, image); s = P(entailment) of NLI with premise
//      "question: q answer: a" and hypothesis "question: q answer: a_I".
//   B  a_I = VQA(q, image); s = P(yes) for "Is a == a_I in this image?".
//   C  s = P(yes) for "is a true for q in this image?" (single VQA call).

#ifndef ALIGNVQ_VQ2_HPP_
#define ALIGNVQ_VQ2_HPP_

#include <cstddef>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"
#include "alignvq/questions.hpp"
#include "alignvq/scorer.hpp"
#include "alignvq/spans.hpp"
#include "alignvq/types.hpp"

namespace alignvq {

enum class Vq2Variant { kA, kB, kC };
enum class EmptyPolicy { kError, kFallbackHalf };

std::string_view variant_name(Vq2Variant v);
Vq2Variant parse_variant(std::string_view name);
std::string_view empty_policy_name(EmptyPolicy p);
EmptyPolicy parse_empty_policy(std::string_view name);

struct Vq2Config {
  Vq2Variant variant = Vq2Variant::kC;
  SpanConfig span_cfg;
  QgConfig qg_cfg;
  EmptyPolicy empty_policy = EmptyPolicy::kFallbackHalf;

  void validate() const;
};

void to_json(nlohmann::json& j, const Vq2Config& v);
void from_json(const nlohmann::json& j, Vq2Config& v);

/// "is {answer} true for {question} in this image?"; throws
/// Error(kPrecondition) for an empty answer.
std::string predicate_question(const QAPair& qa);

/// "Is {answer} == {image_answer} in this image?"
std::string equality_question(std::string_view answer,
                              std::string_view image_answer);

/// "question: {q} answer: {a}"
std::string qa_statement(std::string_view question, std::string_view answer);

QAAlignment score_qa_variant_a(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image);
QAAlignment score_qa_variant_b(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image);
QAAlignment score_qa_variant_c(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image);
QAAlignment score_qa(ModelBackend& backend, const QAPair& qa,
                     const ImageRef& image, Vq2Variant variant);

/// Mean of the breakdown scores; applies the empty policy when no pair
/// survives (status no_questions, score 0.5, or Error(kNoQuestions)).
AlignmentResult aggregate_vq2(std::string pair_id, std::string scorer_id,
                              std::vector<QAAlignment> breakdown,
                              EmptyPolicy policy);

AlignmentResult vq2_score(ModelBackend& backend, const TextImagePair& pair,
                          const Vq2Config& cfg, std::size_t parallelism = 1);

/// Lowest-scoring pair; ties go to the earliest answer span offset, then to
/// breakdown order. Throws Error(kEmptyBreakdown).
QAAlignment localize_misalignment(const AlignmentResult& result);

class Vq2Scorer : public AlignmentScorer {
 public:
  Vq2Scorer(std::shared_ptr<ModelBackend> backend, Vq2Config cfg,
            std::size_t parallelism = 1);

  std::string scorer_id() const override;
  std::string config_digest() const override;
  AlignmentResult score(const TextImagePair& pair) override;

  const Vq2Config& config() const { return cfg_; }

 private:
  std::shared_ptr<ModelBackend> backend_;
  Vq2Config cfg_;
  std::size_t parallelism_;
};

}  // namespace alignvq

#endif  // ALIGNVQ_VQ2_HPP_
