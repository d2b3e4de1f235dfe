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

#include "alignvq/types.hpp"

#include <filesystem>
#include <system_error>

#include "alignvq/digest.hpp"
#include "alignvq/error.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

constexpr std::string_view kFileScheme = "file://";

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

// Bare uri string unless a digest must be preserved.
json compact_image(const ImageRef& image) {
  if (image.content_digest) return json(image);
  return json(image.uri);
}

}  // namespace

bool is_local_path(std::string_view uri) {
  if (uri.substr(0, kFileScheme.size()) == kFileScheme) return true;
  return uri.find("://") == std::string_view::npos;
}

std::string canonical_uri(std::string_view uri) {
  std::string u = text::trim(uri);
  if (!is_local_path(u)) return u;
  if (u.substr(0, kFileScheme.size()) == kFileScheme) {
    u.erase(0, kFileScheme.size());
  }
  return std::filesystem::path(u).lexically_normal().string();
}

std::string image_identity(const ImageRef& image) {
  if (image.content_digest && !image.content_digest->empty()) {
    return *image.content_digest;
  }
  if (is_local_path(image.uri)) return sha256_file(canonical_uri(image.uri));
  return "uri:" + image.uri;
}

std::string default_pair_id(std::string_view text, const ImageRef& image) {
  std::string identity;
  try {
    identity = image_identity(image);
  } catch (const Error&) {
    // Unreadable images still get a stable id; scoring reports the failure.
    identity = "uri:" + image.uri;
  }
  return canonical_digest(json::array({std::string(text), identity}))
      .substr(0, 16);
}

TextImagePair validate_pair(TextImagePair pair) {
  pair.text = text::trim(pair.text);
  if (pair.text.empty()) throw Error(ErrorCode::kEmptyText, "text is empty");
  if (pair.label && *pair.label != 0 && *pair.label != 1) {
    throw Error(ErrorCode::kBadLabel,
                "label must be 0 or 1, got " + std::to_string(*pair.label));
  }
  pair.image.uri = canonical_uri(pair.image.uri);
  if (pair.image.uri.empty()) {
    throw Error(ErrorCode::kPrecondition, "image uri is empty");
  }
  if (pair.image.content_digest && is_local_path(pair.image.uri)) {
    std::error_code ec;
    if (std::filesystem::exists(pair.image.uri, ec) &&
        sha256_file(pair.image.uri) != *pair.image.content_digest) {
      throw Error(ErrorCode::kPrecondition,
                  "content_digest does not match '" + pair.image.uri + "'");
    }
  }
  if (pair.pair_id.empty()) {
    pair.pair_id = default_pair_id(pair.text, pair.image);
  }
  return pair;
}

std::string_view span_kind_name(SpanKind kind) {
  switch (kind) {
    case SpanKind::kNamedEntity: return "named_entity";
    case SpanKind::kNounPhrase: return "noun_phrase";
    case SpanKind::kAdjectival: return "adjectival";
    case SpanKind::kLocative: return "locative";
    case SpanKind::kOther: return "other";
  }
  return "other";
}

SpanKind parse_span_kind(std::string_view name) {
  if (name == "named_entity") return SpanKind::kNamedEntity;
  if (name == "noun_phrase") return SpanKind::kNounPhrase;
  if (name == "adjectival") return SpanKind::kAdjectival;
  if (name == "locative") return SpanKind::kLocative;
  if (name == "other") return SpanKind::kOther;
  throw Error(ErrorCode::kSchemaMismatch,
              "unknown span kind '" + std::string(name) + "'");
}

bool span_matches(const AnswerSpan& span, std::string_view t) {
  if (span.char_start >= span.char_end) return false;
  if (span.char_end > text::codepoint_length(t)) return false;
  return text::substr_codepoints(t, span.char_start, span.char_end) ==
         span.surface;
}

std::string_view result_status_name(ResultStatus status) {
  return status == ResultStatus::kOk ? "ok" : "no_questions";
}

void to_json(json& j, const ImageRef& v) {
  j = json{{"uri", v.uri}};
  put_optional(j, "content_digest", v.content_digest);
}

void from_json(const json& j, ImageRef& v) {
  if (j.is_string()) {
    v = ImageRef{j.get<std::string>(), std::nullopt};
    return;
  }
  v.uri = j.at("uri").get<std::string>();
  v.content_digest = get_optional<std::string>(j, "content_digest");
}

void to_json(json& j, const TextImagePair& v) {
  j = json{{"pair_id", v.pair_id},
           {"text", v.text},
           {"image", compact_image(v.image)}};
  put_optional(j, "label", v.label);
  put_optional(j, "source", v.source);
}

void from_json(const json& j, TextImagePair& v) {
  v.pair_id = j.value("pair_id", std::string());
  v.text = j.at("text").get<std::string>();
  v.image = j.at("image").get<ImageRef>();
  v.label = get_optional<int>(j, "label");
  v.source = get_optional<std::string>(j, "source");
}

void to_json(json& j, const AnswerSpan& v) {
  j = json{{"surface", v.surface},
           {"char_start", v.char_start},
           {"char_end", v.char_end},
           {"kind", span_kind_name(v.kind)}};
}

void from_json(const json& j, AnswerSpan& v) {
  v.surface = j.at("surface").get<std::string>();
  v.char_start = j.at("char_start").get<std::size_t>();
  v.char_end = j.at("char_end").get<std::size_t>();
  v.kind = parse_span_kind(j.value("kind", std::string("other")));
}

void to_json(json& j, const QAPair& v) {
  j = json{{"question", v.question}, {"answer", v.answer}, {"kept", v.kept}};
  put_optional(j, "roundtrip_answer", v.roundtrip_answer);
  put_optional(j, "roundtrip_f1", v.roundtrip_f1);
}

void from_json(const json& j, QAPair& v) {
  v.question = j.at("question").get<std::string>();
  v.answer = j.at("answer").get<AnswerSpan>();
  v.kept = j.value("kept", false);
  v.roundtrip_answer = get_optional<std::string>(j, "roundtrip_answer");
  v.roundtrip_f1 = get_optional<double>(j, "roundtrip_f1");
}

void to_json(json& j, const QAAlignment& v) {
  j = json{{"qa", v.qa},
           {"predicate_question", v.predicate_question},
           {"score", v.score}};
  put_optional(j, "vqa_answer", v.vqa_answer);
}

void from_json(const json& j, QAAlignment& v) {
  v.qa = j.at("qa").get<QAPair>();
  v.predicate_question = j.at("predicate_question").get<std::string>();
  v.score = j.at("score").get<double>();
  v.vqa_answer = get_optional<std::string>(j, "vqa_answer");
}

void to_json(json& j, const AlignmentResult& v) {
  j = json{{"pair_id", v.pair_id},
           {"scorer_id", v.scorer_id},
           {"score", v.score},
           {"status", result_status_name(v.status)},
           {"qa_breakdown", v.qa_breakdown}};
}

void from_json(const json& j, AlignmentResult& v) {
  v.pair_id = j.at("pair_id").get<std::string>();
  v.scorer_id = j.at("scorer_id").get<std::string>();
  v.score = j.at("score").get<double>();
  const auto status = j.value("status", std::string("ok"));
  if (status == "ok") {
    v.status = ResultStatus::kOk;
  } else if (status == "no_questions") {
    v.status = ResultStatus::kNoQuestions;
  } else {
    throw Error(ErrorCode::kSchemaMismatch, "unknown status '" + status + "'");
  }
  v.qa_breakdown =
      j.value("qa_breakdown", std::vector<QAAlignment>{});
}

void to_json(json& j, const DatasetRecord& v) {
  j = json{{"image", compact_image(v.image)},
           {"text", v.text},
           {"label", v.label},
           {"original_dataset_id", v.original_dataset_id},
           {"dataset_source", v.dataset_source}};
}

void from_json(const json& j, DatasetRecord& v) {
  v.image = j.at("image").get<ImageRef>();
  v.text = j.at("text").get<std::string>();
  v.label = j.at("label").get<int>();
  v.original_dataset_id = j.at("original_dataset_id").get<std::string>();
  v.dataset_source = j.at("dataset_source").get<std::string>();
}

void to_json(json& j, const WinogroundExample& v) {
  j = json{{"id", v.example_id},
           {"caption_0", v.captions[0]},
           {"caption_1", v.captions[1]},
           {"image_0", compact_image(v.images[0])},
           {"image_1", compact_image(v.images[1])}};
}

void from_json(const json& j, WinogroundExample& v) {
  const auto& id = j.at("id");
  v.example_id = id.is_string() ? id.get<std::string>() : id.dump();
  v.captions = {j.at("caption_0").get<std::string>(),
                j.at("caption_1").get<std::string>()};
  v.images = {j.at("image_0").get<ImageRef>(), j.at("image_1").get<ImageRef>()};
}

}  // namespace alignvq
