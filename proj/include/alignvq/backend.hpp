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

// Uniform interface over every external model the toolkit consumes:
// linguistic annotation, question generation, extractive QA, VQA, NLI, text
// completion and yes/no visual entailment.

#ifndef ALIGNVQ_BACKEND_HPP_
#define ALIGNVQ_BACKEND_HPP_

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alignvq/types.hpp"

namespace alignvq {

// Universal POS tags.
enum class Pos {
  kNoun, kPropn, kPron, kDet, kNum, kAdj, kAdv, kAdp, kCconj, kSconj,
  kVerb, kAux, kPart, kPunct, kX,
};

std::string_view pos_name(Pos pos);
Pos parse_pos(std::string_view name);

struct Token {
  std::string text;
  std::size_t start = 0;  // code points
  std::size_t end = 0;
  Pos pos = Pos::kX;
  int head = -1;  // token index, -1 for the root
  std::string dep;

  bool operator==(const Token&) const = default;
};

// Half-open token index range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string label;

  bool operator==(const TokenRange&) const = default;
};

struct Annotation {
  std::vector<Token> tokens;
  std::vector<TokenRange> entities;
  std::vector<TokenRange> noun_chunks;

  bool operator==(const Annotation&) const = default;
};

/// Throws Error(kInvalidResponse) unless tokens tile `text` (in order,
/// non-overlapping, separated only by whitespace, surfaces matching) and all
/// ranges and heads reference valid token indices.
void validate_annotation(const Annotation& annotation, std::string_view text);

/// Code-point offsets of the token range within the annotated text.
std::pair<std::size_t, std::size_t> char_extent(const Annotation& annotation,
                                                const TokenRange& range);

void to_json(nlohmann::json& j, const Token& v);
void from_json(const nlohmann::json& j, Token& v);
void to_json(nlohmann::json& j, const TokenRange& v);
void from_json(const nlohmann::json& j, TokenRange& v);
void to_json(nlohmann::json& j, const Annotation& v);
void from_json(const nlohmann::json& j, Annotation& v);

struct VqaResponse {
  std::string answer_text;
  std::optional<double> yes_probability;

  bool operator==(const VqaResponse&) const = default;
};

struct NliResponse {
  double entail_p = 0.0;
  double neutral_p = 0.0;
  double contradict_p = 0.0;

  bool operator==(const NliResponse&) const = default;
};

struct YesNoProbabilities {
  double p_yes = 0.0;
  double p_no = 0.0;

  bool operator==(const YesNoProbabilities&) const = default;
};

void to_json(nlohmann::json& j, const NliResponse& v);
void from_json(const nlohmann::json& j, NliResponse& v);

/// Rejects negative or non-finite components; rescales by the sum when it
/// is off from 1 by more than 1e-6 and logs a warning.
NliResponse normalize_nli(NliResponse response);

/// Rejects probabilities outside [0, 1].
YesNoProbabilities validate_yes_no(YesNoProbabilities response);
double validate_probability(double p, std::string_view what);

/// Yes/no predicate templates used by the VQ² variants: questions of the
/// form "is ... in this image?" (case-insensitive).
bool is_yes_no_predicate(std::string_view question);

struct BackendConfig {
  std::string backend_id = "mock";
  std::optional<std::string> endpoint;
  double timeout_s = 30.0;
  int max_in_flight = 4;
  std::optional<std::string> fixture_path;
  int max_retries = 2;
  // Mock fallbacks for requests with no fixture entry.
  double default_yes_probability = 0.5;
  YesNoProbabilities default_vnli{0.5, 0.5};

  /// Throws Error(kInvalidConfig) when timeout_s <= 0 or max_in_flight < 1.
  void validate() const;
};

/// Public calls check preconditions and validate responses, then dispatch to
/// the protected do_* hooks implemented by concrete backends. All
/// implementations must tolerate concurrent calls.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  virtual std::string id() const = 0;

  /// Identifies the model configuration behind this backend; part of score
  /// cache keys so results from different models never collide.
  virtual std::string fingerprint() const { return id(); }

  Annotation annotate(std::string_view text);
  std::string generate_question(std::string_view answer,
                                std::string_view context);
  std::string answer_text_question(std::string_view question,
                                   std::string_view context);
  VqaResponse answer_visual_question(std::string_view question,
                                     const ImageRef& image);
  NliResponse nli(std::string_view premise, std::string_view hypothesis);
  std::vector<std::string> complete_text(std::string_view prompt,
                                         int n_samples);
  YesNoProbabilities vnli_yes_no(std::string_view prompt,
                                 const ImageRef& image);

 protected:
  virtual Annotation do_annotate(std::string_view text) = 0;
  virtual std::string do_generate_question(std::string_view answer,
                                           std::string_view context) = 0;
  virtual std::string do_answer_text_question(std::string_view question,
                                              std::string_view context) = 0;
  virtual VqaResponse do_answer_visual_question(std::string_view question,
                                                const ImageRef& image) = 0;
  virtual NliResponse do_nli(std::string_view premise,
                             std::string_view hypothesis) = 0;
  virtual std::vector<std::string> do_complete_text(std::string_view prompt,
                                                    int n_samples) = 0;
  virtual YesNoProbabilities do_vnli_yes_no(std::string_view prompt,
                                            const ImageRef& image) = 0;
};

/// Forwards to an inner backend and counts calls; used to assert that warm
/// cache runs never reach a model.
class CountingBackend : public ModelBackend {
 public:
  explicit CountingBackend(std::shared_ptr<ModelBackend> inner)
      : inner_(std::move(inner)) {}

  std::string id() const override { return inner_->id(); }
  std::string fingerprint() const override { return inner_->fingerprint(); }
  std::size_t calls() const { return calls_.load(); }

 protected:
  Annotation do_annotate(std::string_view text) override;
  std::string do_generate_question(std::string_view answer,
                                   std::string_view context) override;
  std::string do_answer_text_question(std::string_view question,
                                      std::string_view context) override;
  VqaResponse do_answer_visual_question(std::string_view question,
                                        const ImageRef& image) override;
  NliResponse do_nli(std::string_view premise,
                     std::string_view hypothesis) override;
  std::vector<std::string> do_complete_text(std::string_view prompt,
                                            int n_samples) override;
  YesNoProbabilities do_vnli_yes_no(std::string_view prompt,
                                    const ImageRef& image) override;

 private:
  std::shared_ptr<ModelBackend> inner_;
  std::atomic<std::size_t> calls_{0};
};

/// Remote client when `endpoint` is set, fixture-driven mock otherwise.
std::shared_ptr<ModelBackend> make_backend(const BackendConfig& config);

}  // namespace alignvq

#endif  // ALIGNVQ_BACKEND_HPP_
