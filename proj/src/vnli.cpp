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

#include "alignvq/vnli.hpp"

#include "alignvq/digest.hpp"
#include "alignvq/error.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {
constexpr std::string_view kPlaceholder = "{text}";
}  // namespace

void VnliConfig::validate() const {
  if (text::count_occurrences(prompt_template, kPlaceholder) != 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "prompt template must contain {text} exactly once");
  }
  if (scorer_id.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "scorer_id is empty");
  }
}

void to_json(nlohmann::json& j, const VnliConfig& v) {
  j = nlohmann::json{{"prompt_template", v.prompt_template},
                     {"scorer_id", v.scorer_id}};
}

void from_json(const nlohmann::json& j, VnliConfig& v) {
  VnliConfig d;
  v.prompt_template = j.value("prompt_template", d.prompt_template);
  v.scorer_id = j.value("scorer_id", d.scorer_id);
}

std::string render_vnli_prompt(const VnliConfig& cfg, std::string_view t) {
  cfg.validate();
  std::string prompt = cfg.prompt_template;
  text::replace_once(prompt, kPlaceholder, t);
  return prompt;
}

double yes_ratio(const YesNoProbabilities& p) {
  const double total = p.p_yes + p.p_no;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kDegenerateProbabilities,
                "p_yes + p_no is zero; ratio undefined");
  }
  return p.p_yes / total;
}

AlignmentResult vnli_score(ModelBackend& backend, const TextImagePair& pair,
                           const VnliConfig& cfg) {
  const auto probs =
      backend.vnli_yes_no(render_vnli_prompt(cfg, pair.text), pair.image);
  AlignmentResult r;
  r.pair_id = pair.pair_id;
  r.scorer_id = cfg.scorer_id;
  r.score = yes_ratio(probs);
  r.status = ResultStatus::kOk;
  return r;
}

AlignmentResult ensemble_score(const AlignmentResult& a,
                               const AlignmentResult& b) {
  if (a.pair_id != b.pair_id) {
    throw Error(ErrorCode::kPairMismatch,
                "cannot average results for '" + a.pair_id + "' and '" +
                    b.pair_id + "'");
  }
  AlignmentResult r;
  r.pair_id = a.pair_id;
  r.scorer_id = "avg(" + a.scorer_id + "," + b.scorer_id + ")";
  r.score = (a.score + b.score) / 2.0;
  // No breakdown: a non-empty one would have to average to `score`.
  r.status = ResultStatus::kOk;
  return r;
}

VnliScorer::VnliScorer(std::shared_ptr<ModelBackend> backend, VnliConfig cfg)
    : backend_(std::move(backend)), cfg_(std::move(cfg)) {
  cfg_.validate();
}

std::string VnliScorer::config_digest() const {
  return canonical_digest(
      nlohmann::json{{"config", cfg_}, {"backend", backend_->fingerprint()}});
}

AlignmentResult VnliScorer::score(const TextImagePair& pair) {
  return vnli_score(*backend_, pair, cfg_);
}

EnsembleScorer::EnsembleScorer(std::shared_ptr<AlignmentScorer> first,
                               std::shared_ptr<AlignmentScorer> second)
    : first_(std::move(first)), second_(std::move(second)) {}

std::string EnsembleScorer::scorer_id() const {
  return "avg(" + first_->scorer_id() + "," + second_->scorer_id() + ")";
}

std::string EnsembleScorer::config_digest() const {
  return canonical_digest(nlohmann::json::array(
      {first_->config_digest(), second_->config_digest()}));
}

AlignmentResult EnsembleScorer::score(const TextImagePair& pair) {
  return ensemble_score(first_->score(pair), second_->score(pair));
}

}  // namespace alignvq
