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

#include "alignvq/questions.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include "alignvq/error.hpp"
#include "alignvq/parallel.hpp"
#include "alignvq/text.hpp"

namespace alignvq {

void QgConfig::validate() const {
  if (!(f1_threshold >= 0.0 && f1_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "f1_threshold must be in [0,1]");
  }
  if (max_questions < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_questions must be >= 1");
  }
}

void to_json(nlohmann::json& j, const QgConfig& v) {
  j = nlohmann::json{{"f1_threshold", v.f1_threshold},
                     {"max_questions", v.max_questions}};
}

void from_json(const nlohmann::json& j, QgConfig& v) {
  QgConfig d;
  v.f1_threshold = j.value("f1_threshold", d.f1_threshold);
  v.max_questions = j.value("max_questions", d.max_questions);
}

std::string normalize_answer(std::string_view s) {
  std::string no_punct;
  no_punct.reserve(s.size());
  for (char c : text::to_lower(s)) {
    if (!std::ispunct(static_cast<unsigned char>(c))) no_punct.push_back(c);
  }
  std::string out;
  for (const auto& tok : text::split_whitespace(no_punct)) {
    if (tok == "a" || tok == "an" || tok == "the") continue;
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

double token_f1(std::string_view prediction, std::string_view gold) {
  const auto pred = text::split_whitespace(normalize_answer(prediction));
  const auto ref = text::split_whitespace(normalize_answer(gold));
  if (pred.empty() || ref.empty()) return pred.empty() && ref.empty() ? 1.0 : 0.0;

  std::map<std::string, int> counts;
  for (const auto& t : ref) ++counts[t];
  int common = 0;
  for (const auto& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / pred.size();
  const double recall = static_cast<double>(common) / ref.size();
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<QAPair> generate_qa_pairs(ModelBackend& backend,
                                      std::string_view t,
                                      std::span<const AnswerSpan> spans,
                                      const QgConfig& cfg,
                                      std::size_t parallelism) {
  cfg.validate();
  const std::string context(t);
  return parallel_map(spans.size(), parallelism, [&](std::size_t i) {
    const AnswerSpan& span = spans[i];
    QAPair qa;
    qa.answer = span;
    qa.question = backend.generate_question(span.surface, context);
    qa.roundtrip_answer = backend.answer_text_question(qa.question, context);
    qa.roundtrip_f1 = token_f1(*qa.roundtrip_answer, span.surface);
    qa.kept = *qa.roundtrip_f1 >= cfg.f1_threshold;
    return qa;
  });
}

std::vector<QAPair> filter_qa_pairs(std::vector<QAPair> pairs,
                                    const QgConfig& cfg) {
  cfg.validate();
  std::vector<QAPair> out;
  for (auto& qa : pairs) {
    qa.kept = qa.roundtrip_f1.value_or(0.0) >= cfg.f1_threshold;
    if (!qa.kept) continue;
    out.push_back(std::move(qa));
    if (out.size() >= static_cast<std::size_t>(cfg.max_questions)) break;
  }
  return out;
}

std::vector<QAPair> build_qa_pairs(ModelBackend& backend, std::string_view t,
                                   std::span<const AnswerSpan> spans,
                                   const QgConfig& cfg,
                                   std::size_t parallelism) {
  return filter_qa_pairs(generate_qa_pairs(backend, t, spans, cfg, parallelism),
                         cfg);
}

}  // namespace alignvq
