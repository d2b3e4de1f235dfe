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

#include "alignvq/vq2.hpp"

#include <numeric>

#include "alignvq/digest.hpp"
#include "alignvq/error.hpp"
#include "alignvq/parallel.hpp"

namespace alignvq {

std::string_view variant_name(Vq2Variant v) {
  switch (v) {
    case Vq2Variant::kA: return "A";
    case Vq2Variant::kB: return "B";
    case Vq2Variant::kC: return "C";
  }
  return "C";
}

Vq2Variant parse_variant(std::string_view name) {
  if (name == "A" || name == "a") return Vq2Variant::kA;
  if (name == "B" || name == "b") return Vq2Variant::kB;
  if (name == "C" || name == "c") return Vq2Variant::kC;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown VQ2 variant '" + std::string(name) + "'");
}

std::string_view empty_policy_name(EmptyPolicy p) {
  return p == EmptyPolicy::kError ? "error" : "fallback_half";
}

EmptyPolicy parse_empty_policy(std::string_view name) {
  if (name == "error") return EmptyPolicy::kError;
  if (name == "fallback_half") return EmptyPolicy::kFallbackHalf;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown empty policy '" + std::string(name) + "'");
}

void Vq2Config::validate() const {
  span_cfg.validate();
  qg_cfg.validate();
}

void to_json(nlohmann::json& j, const Vq2Config& v) {
  j = nlohmann::json{{"variant", variant_name(v.variant)},
                     {"span_cfg", v.span_cfg},
                     {"qg_cfg", v.qg_cfg},
                     {"empty_policy", empty_policy_name(v.empty_policy)}};
}

void from_json(const nlohmann::json& j, Vq2Config& v) {
  v.variant = parse_variant(j.value("variant", std::string("C")));
  v.span_cfg = j.value("span_cfg", SpanConfig{});
  v.qg_cfg = j.value("qg_cfg", QgConfig{});
  v.empty_policy =
      parse_empty_policy(j.value("empty_policy", std::string("fallback_half")));
}

std::string predicate_question(const QAPair& qa) {
  if (qa.answer.surface.empty()) {
    throw Error(ErrorCode::kPrecondition, "predicate question needs an answer");
  }
  return "is " + qa.answer.surface + " true for " + qa.question +
         " in this image?";
}

std::string equality_question(std::string_view answer,
                              std::string_view image_answer) {
  return "Is " + std::string(answer) + " == " + std::string(image_answer) +
         " in this image?";
}

std::string qa_statement(std::string_view question, std::string_view answer) {
  return "question: " + std::string(question) + " answer: " +
         std::string(answer);
}

QAAlignment score_qa_variant_c(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image) {
  QAAlignment out;
  out.qa = qa;
  out.predicate_question = predicate_question(qa);
  const VqaResponse r =
      backend.answer_visual_question(out.predicate_question, image);
  out.score = r.yes_probability.value();
  return out;
}

QAAlignment score_qa_variant_b(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image) {
  QAAlignment out;
  out.qa = qa;
  out.vqa_answer = backend.answer_visual_question(qa.question, image).answer_text;
  out.predicate_question = equality_question(qa.answer.surface, *out.vqa_answer);
  const VqaResponse r =
      backend.answer_visual_question(out.predicate_question, image);
  out.score = r.yes_probability.value();
  return out;
}

QAAlignment score_qa_variant_a(ModelBackend& backend, const QAPair& qa,
                               const ImageRef& image) {
  QAAlignment out;
  out.qa = qa;
  out.vqa_answer = backend.answer_visual_question(qa.question, image).answer_text;
  const std::string premise = qa_statement(qa.question, qa.answer.surface);
  out.predicate_question = qa_statement(qa.question, *out.vqa_answer);
  out.score = backend.nli(premise, out.predicate_question).entail_p;
  return out;
}

QAAlignment score_qa(ModelBackend& backend, const QAPair& qa,
                     const ImageRef& image, Vq2Variant variant) {
  switch (variant) {
    case Vq2Variant::kA: return score_qa_variant_a(backend, qa, image);
    case Vq2Variant::kB: return score_qa_variant_b(backend, qa, image);
    case Vq2Variant::kC: return score_qa_variant_c(backend, qa, image);
  }
  return score_qa_variant_c(backend, qa, image);
}

AlignmentResult aggregate_vq2(std::string pair_id, std::string scorer_id,
                              std::vector<QAAlignment> breakdown,
                              EmptyPolicy policy) {
  AlignmentResult r;
  r.pair_id = std::move(pair_id);
  r.scorer_id = std::move(scorer_id);
  if (breakdown.empty()) {
    if (policy == EmptyPolicy::kError) {
      throw Error(ErrorCode::kNoQuestions,
                  "no question-answer pair survived for " + r.pair_id);
    }
    r.status = ResultStatus::kNoQuestions;
    r.score = 0.5;
    return r;
  }
  const double sum = std::accumulate(
      breakdown.begin(), breakdown.end(), 0.0,
      [](double acc, const QAAlignment& a) { return acc + a.score; });
  r.score = sum / static_cast<double>(breakdown.size());
  r.qa_breakdown = std::move(breakdown);
  r.status = ResultStatus::kOk;
  return r;
}

namespace {

std::string vq2_scorer_id(Vq2Variant v) {
  switch (v) {
    case Vq2Variant::kA: return "vq2a";
    case Vq2Variant::kB: return "vq2b";
    case Vq2Variant::kC: return "vq2";
  }
  return "vq2";
}

}  // namespace

AlignmentResult vq2_score(ModelBackend& backend, const TextImagePair& pair,
                          const Vq2Config& cfg, std::size_t parallelism) {
  cfg.validate();
  const auto spans = extract_candidates(backend, pair.text, cfg.span_cfg);
  const auto qa_pairs =
      build_qa_pairs(backend, pair.text, spans, cfg.qg_cfg, parallelism);
  auto breakdown =
      parallel_map(qa_pairs.size(), parallelism, [&](std::size_t i) {
        return score_qa(backend, qa_pairs[i], pair.image, cfg.variant);
      });
  return aggregate_vq2(pair.pair_id, vq2_scorer_id(cfg.variant),
                       std::move(breakdown), cfg.empty_policy);
}

QAAlignment localize_misalignment(const AlignmentResult& result) {
  if (result.qa_breakdown.empty()) {
    throw Error(ErrorCode::kEmptyBreakdown,
                "no question-answer pairs to localize in " + result.pair_id);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.qa_breakdown.size(); ++i) {
    const auto& cand = result.qa_breakdown[i];
    const auto& cur = result.qa_breakdown[best];
    if (cand.score < cur.score ||
        (cand.score == cur.score &&
         cand.qa.answer.char_start < cur.qa.answer.char_start)) {
      best = i;
    }
  }
  return result.qa_breakdown[best];
}

Vq2Scorer::Vq2Scorer(std::shared_ptr<ModelBackend> backend, Vq2Config cfg,
                     std::size_t parallelism)
    : backend_(std::move(backend)), cfg_(std::move(cfg)),
      parallelism_(parallelism) {
  cfg_.validate();
}

std::string Vq2Scorer::scorer_id() const { return vq2_scorer_id(cfg_.variant); }

std::string Vq2Scorer::config_digest() const {
  return canonical_digest(
      nlohmann::json{{"config", cfg_}, {"backend", backend_->fingerprint()}});
}

AlignmentResult Vq2Scorer::score(const TextImagePair& pair) {
  return vq2_score(*backend_, pair, cfg_, parallelism_);
}

}  // namespace alignvq
