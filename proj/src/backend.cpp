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

#include "alignvq/backend.hpp"

#include <array>
#include <cmath>

#include <spdlog/spdlog.h>

#include "alignvq/error.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Pos, std::string_view>, 15> kPosNames{{
    {Pos::kNoun, "NOUN"},   {Pos::kPropn, "PROPN"}, {Pos::kPron, "PRON"},
    {Pos::kDet, "DET"},     {Pos::kNum, "NUM"},     {Pos::kAdj, "ADJ"},
    {Pos::kAdv, "ADV"},     {Pos::kAdp, "ADP"},     {Pos::kCconj, "CCONJ"},
    {Pos::kSconj, "SCONJ"}, {Pos::kVerb, "VERB"},   {Pos::kAux, "AUX"},
    {Pos::kPart, "PART"},   {Pos::kPunct, "PUNCT"}, {Pos::kX, "X"},
}};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

void check_range(const TokenRange& r, std::size_t n, const char* what) {
  if (r.begin >= r.end || r.end > n) {
    throw Error(ErrorCode::kInvalidResponse,
                std::string(what) + " references invalid token range [" +
                    std::to_string(r.begin) + "," + std::to_string(r.end) +
                    ")");
  }
}

// Malformed fixture or remote payloads surface as InvalidResponse.
template <typename Fn>
auto guarded(std::string_view task, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidResponse,
                std::string(task) + ": malformed payload: " + e.what());
  }
}

}  // namespace

std::string_view pos_name(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "X";
}

Pos parse_pos(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  return Pos::kX;
}

void validate_annotation(const Annotation& annotation, std::string_view t) {
  const std::size_t n = annotation.tokens.size();
  std::size_t cursor = 0;  // code points
  const std::size_t length = text::codepoint_length(t);
  for (std::size_t i = 0; i < n; ++i) {
    const Token& tok = annotation.tokens[i];
    if (tok.start < cursor || tok.start >= tok.end || tok.end > length) {
      throw Error(ErrorCode::kInvalidResponse,
                  "token " + std::to_string(i) + " has bad offsets");
    }
    const std::string gap = text::substr_codepoints(t, cursor, tok.start);
    for (char c : gap) {
      if (!is_space(c)) {
        throw Error(ErrorCode::kInvalidResponse,
                    "tokens do not tile the text before token " +
                        std::to_string(i));
      }
    }
    if (text::substr_codepoints(t, tok.start, tok.end) != tok.text) {
      throw Error(ErrorCode::kInvalidResponse,
                  "token " + std::to_string(i) + " surface mismatch");
    }
    if (tok.head < -1 || tok.head >= static_cast<int>(n)) {
      throw Error(ErrorCode::kInvalidResponse,
                  "token " + std::to_string(i) + " has invalid head");
    }
    cursor = tok.end;
  }
  for (char c : text::substr_codepoints(t, cursor, length)) {
    if (!is_space(c)) {
      throw Error(ErrorCode::kInvalidResponse, "trailing text not tokenized");
    }
  }
  for (const auto& r : annotation.entities) check_range(r, n, "entity");
  for (const auto& r : annotation.noun_chunks) check_range(r, n, "noun chunk");
}

std::pair<std::size_t, std::size_t> char_extent(const Annotation& annotation,
                                                const TokenRange& range) {
  return {annotation.tokens.at(range.begin).start,
          annotation.tokens.at(range.end - 1).end};
}

void to_json(json& j, const Token& v) {
  j = json{{"text", v.text}, {"start", v.start}, {"end", v.end},
           {"pos", pos_name(v.pos)}, {"head", v.head}, {"dep", v.dep}};
}

void from_json(const json& j, Token& v) {
  v.text = j.at("text").get<std::string>();
  v.start = j.at("start").get<std::size_t>();
  v.end = j.at("end").get<std::size_t>();
  v.pos = parse_pos(j.value("pos", std::string("X")));
  v.head = j.value("head", -1);
  v.dep = j.value("dep", std::string());
}

void to_json(json& j, const TokenRange& v) {
  j = json{{"start", v.begin}, {"end", v.end}, {"label", v.label}};
}

void from_json(const json& j, TokenRange& v) {
  v.begin = j.at("start").get<std::size_t>();
  v.end = j.at("end").get<std::size_t>();
  v.label = j.value("label", std::string());
}

void to_json(json& j, const Annotation& v) {
  j = json{{"tokens", v.tokens},
           {"entities", v.entities},
           {"noun_chunks", v.noun_chunks}};
}

void from_json(const json& j, Annotation& v) {
  v.tokens = j.at("tokens").get<std::vector<Token>>();
  v.entities = j.value("entities", std::vector<TokenRange>{});
  v.noun_chunks = j.value("noun_chunks", std::vector<TokenRange>{});
}

void to_json(json& j, const NliResponse& v) {
  j = json{{"entailment", v.entail_p},
           {"neutral", v.neutral_p},
           {"contradiction", v.contradict_p}};
}

void from_json(const json& j, NliResponse& v) {
  v.entail_p = j.at("entailment").get<double>();
  v.neutral_p = j.at("neutral").get<double>();
  v.contradict_p = j.at("contradiction").get<double>();
}

double validate_probability(double p, std::string_view what) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw Error(ErrorCode::kInvalidResponse,
                std::string(what) + " out of [0,1]: " + std::to_string(p));
  }
  return p;
}

NliResponse normalize_nli(NliResponse r) {
  for (double p : {r.entail_p, r.neutral_p, r.contradict_p}) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kInvalidResponse,
                  "NLI probability is negative or non-finite");
    }
  }
  const double sum = r.entail_p + r.neutral_p + r.contradict_p;
  if (sum <= 0.0) {
    throw Error(ErrorCode::kInvalidResponse, "NLI probabilities sum to zero");
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    spdlog::warn("NLI probabilities sum to {}; renormalizing", sum);
    r.entail_p /= sum;
    r.neutral_p /= sum;
    r.contradict_p /= sum;
  }
  return r;
}

YesNoProbabilities validate_yes_no(YesNoProbabilities r) {
  validate_probability(r.p_yes, "p_yes");
  validate_probability(r.p_no, "p_no");
  return r;
}

bool is_yes_no_predicate(std::string_view question) {
  const std::string q = text::to_lower(text::trim(question));
  constexpr std::string_view kPrefix = "is ";
  constexpr std::string_view kSuffix = " in this image?";
  return q.size() > kPrefix.size() + kSuffix.size() &&
         q.compare(0, kPrefix.size(), kPrefix) == 0 &&
         q.compare(q.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0;
}

void BackendConfig::validate() const {
  if (!(timeout_s > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "timeout_s must be > 0");
  }
  if (max_in_flight < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_in_flight must be >= 1");
  }
  if (max_retries < 0) {
    throw Error(ErrorCode::kInvalidConfig, "max_retries must be >= 0");
  }
  validate_probability(default_yes_probability, "default_yes_probability");
  validate_yes_no(default_vnli);
}

Annotation ModelBackend::annotate(std::string_view t) {
  if (text::trim(t).empty()) {
    throw Error(ErrorCode::kEmptyText, "cannot annotate empty text");
  }
  Annotation a = guarded("annotate", [&] { return do_annotate(t); });
  validate_annotation(a, t);
  return a;
}

std::string ModelBackend::generate_question(std::string_view answer,
                                            std::string_view context) {
  if (answer.empty() || context.find(answer) == std::string_view::npos) {
    throw Error(ErrorCode::kPrecondition,
                "answer '" + std::string(answer) + "' is not in the context");
  }
  std::string q = guarded("generate_question", [&] {
    return do_generate_question(answer, context);
  });
  if (auto nl = q.find('\n'); nl != std::string::npos) q.resize(nl);
  q = text::trim(q);
  if (q.empty()) {
    throw Error(ErrorCode::kInvalidResponse, "empty generated question");
  }
  if (q.back() != '?') q.push_back('?');
  return q;
}

std::string ModelBackend::answer_text_question(std::string_view question,
                                               std::string_view context) {
  return text::trim(guarded("answer_text_question", [&] {
    return do_answer_text_question(question, context);
  }));
}

VqaResponse ModelBackend::answer_visual_question(std::string_view question,
                                                 const ImageRef& image) {
  VqaResponse r = guarded("answer_visual_question", [&] {
    return do_answer_visual_question(question, image);
  });
  if (r.yes_probability) {
    validate_probability(*r.yes_probability, "yes_probability");
  } else if (is_yes_no_predicate(question)) {
    throw Error(ErrorCode::kInvalidResponse,
                "no yes probability for predicate question");
  }
  return r;
}

NliResponse ModelBackend::nli(std::string_view premise,
                              std::string_view hypothesis) {
  return normalize_nli(
      guarded("nli", [&] { return do_nli(premise, hypothesis); }));
}

std::vector<std::string> ModelBackend::complete_text(std::string_view prompt,
                                                     int n_samples) {
  if (n_samples < 0) {
    throw Error(ErrorCode::kPrecondition, "n_samples must be >= 0");
  }
  if (n_samples == 0) return {};
  auto out = guarded("complete_text",
                     [&] { return do_complete_text(prompt, n_samples); });
  if (out.size() > static_cast<std::size_t>(n_samples)) out.resize(n_samples);
  return out;
}

YesNoProbabilities ModelBackend::vnli_yes_no(std::string_view prompt,
                                             const ImageRef& image) {
  return validate_yes_no(
      guarded("vnli_yes_no", [&] { return do_vnli_yes_no(prompt, image); }));
}

Annotation CountingBackend::do_annotate(std::string_view t) {
  ++calls_;
  return inner_->annotate(t);
}

std::string CountingBackend::do_generate_question(std::string_view answer,
                                                  std::string_view context) {
  ++calls_;
  return inner_->generate_question(answer, context);
}

std::string CountingBackend::do_answer_text_question(
    std::string_view question, std::string_view context) {
  ++calls_;
  return inner_->answer_text_question(question, context);
}

VqaResponse CountingBackend::do_answer_visual_question(
    std::string_view question, const ImageRef& image) {
  ++calls_;
  return inner_->answer_visual_question(question, image);
}

NliResponse CountingBackend::do_nli(std::string_view premise,
                                    std::string_view hypothesis) {
  ++calls_;
  return inner_->nli(premise, hypothesis);
}

std::vector<std::string> CountingBackend::do_complete_text(
    std::string_view prompt, int n_samples) {
  ++calls_;
  return inner_->complete_text(prompt, n_samples);
}

YesNoProbabilities CountingBackend::do_vnli_yes_no(std::string_view prompt,
                                                   const ImageRef& image) {
  ++calls_;
  return inner_->vnli_yes_no(prompt, image);
}

}  // namespace alignvq
