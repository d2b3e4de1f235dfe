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

// Shared domain model: text/image pairs, question-answer structures, scores
// and dataset records. Everything here is a plain value type.

#ifndef ALIGNVQ_TYPES_HPP_
#define ALIGNVQ_TYPES_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace alignvq {

struct ImageRef {
  std::string uri;
  std::optional<std::string> content_digest;

  bool operator==(const ImageRef&) const = default;
};

/// Stable identity of an image for keying fixtures and caches: the content
/// digest when known, the SHA-256 of the local file when `uri` is a path,
/// otherwise "uri:" + uri for scheme-addressed images that are resolved
/// lazily by a backend.
std::string image_identity(const ImageRef& image);

/// True when the locator names a local file (plain path or file://).
bool is_local_path(std::string_view uri);

/// Strips a file:// prefix and lexically normalizes local paths.
std::string canonical_uri(std::string_view uri);

struct TextImagePair {
  std::string pair_id;
  std::string text;
  ImageRef image;
  std::optional<int> label;
  std::optional<std::string> source;

  bool operator==(const TextImagePair&) const = default;
};

/// Digest of (text, image identity); the default pair_id.
std::string default_pair_id(std::string_view text, const ImageRef& image);

/// Trims text, canonicalizes the image locator and fills a missing pair_id.
/// Throws Error(kEmptyText) or Error(kBadLabel).
TextImagePair validate_pair(TextImagePair pair);

enum class SpanKind { kNamedEntity, kNounPhrase, kAdjectival, kLocative, kOther };

std::string_view span_kind_name(SpanKind kind);
SpanKind parse_span_kind(std::string_view name);

struct AnswerSpan {
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  SpanKind kind = SpanKind::kOther;

  bool operator==(const AnswerSpan&) const = default;
};

/// Checks 0 <= start < end <= len(text) and text[start:end] == surface.
bool span_matches(const AnswerSpan& span, std::string_view text);

struct QAPair {
  std::string question;
  AnswerSpan answer;
  std::optional<std::string> roundtrip_answer;
  std::optional<double> roundtrip_f1;
  bool kept = false;

  bool operator==(const QAPair&) const = default;
};

struct QAAlignment {
  QAPair qa;
  std::string predicate_question;
  double score = 0.0;
  std::optional<std::string> vqa_answer;

  bool operator==(const QAAlignment&) const = default;
};

enum class ResultStatus { kOk, kNoQuestions };

std::string_view result_status_name(ResultStatus status);

struct AlignmentResult {
  std::string pair_id;
  std::string scorer_id;
  double score = 0.0;
  std::vector<QAAlignment> qa_breakdown;
  ResultStatus status = ResultStatus::kOk;

  bool operator==(const AlignmentResult&) const = default;
};

struct DatasetRecord {
  ImageRef image;
  std::string text;
  int label = 0;
  std::string original_dataset_id;
  std::string dataset_source;

  bool operator==(const DatasetRecord&) const = default;
};

struct WinogroundExample {
  std::string example_id;
  std::array<std::string, 2> captions;
  std::array<ImageRef, 2> images;

  bool operator==(const WinogroundExample&) const = default;
};

void to_json(nlohmann::json& j, const ImageRef& v);
void from_json(const nlohmann::json& j, ImageRef& v);
void to_json(nlohmann::json& j, const TextImagePair& v);
void from_json(const nlohmann::json& j, TextImagePair& v);
void to_json(nlohmann::json& j, const AnswerSpan& v);
void from_json(const nlohmann::json& j, AnswerSpan& v);
void to_json(nlohmann::json& j, const QAPair& v);
void from_json(const nlohmann::json& j, QAPair& v);
void to_json(nlohmann::json& j, const QAAlignment& v);
void from_json(const nlohmann::json& j, QAAlignment& v);
void to_json(nlohmann::json& j, const AlignmentResult& v);
void from_json(const nlohmann::json& j, AlignmentResult& v);
void to_json(nlohmann::json& j, const DatasetRecord& v);
void from_json(const nlohmann::json& j, DatasetRecord& v);
void to_json(nlohmann::json& j, const WinogroundExample& v);
void from_json(const nlohmann::json& j, WinogroundExample& v);

}  // namespace alignvq

#endif  // ALIGNVQ_TYPES_HPP_
