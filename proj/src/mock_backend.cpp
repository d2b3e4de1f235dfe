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

#include "alignvq/mock_backend.hpp"

#include <fstream>

#include "alignvq/digest.hpp"
#include "alignvq/error.hpp"
#include "alignvq/rule_annotator.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

constexpr std::string_view kMockScheme = "mock://";

json request(std::string_view task, json inputs) {
  return json{{"task", task}, {"inputs", std::move(inputs)}};
}

std::string strip_terminal_punct(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?' ||
                        s.back() == ' ')) {
    s.pop_back();
  }
  return s;
}

// "is X == Y in this image?" → (X, Y).
std::optional<std::pair<std::string, std::string>> equality_operands(
    std::string_view question) {
  const std::string q = text::trim(question);
  const std::string lower = text::to_lower(q);
  constexpr std::string_view kSuffix = " in this image?";
  const auto eq = q.find(" == ");
  if (lower.rfind("is ", 0) != 0 || eq == std::string::npos ||
      lower.size() < kSuffix.size() + 3 ||
      lower.compare(lower.size() - kSuffix.size(), kSuffix.size(), kSuffix) !=
          0) {
    return std::nullopt;
  }
  const std::size_t rhs_end = q.size() - kSuffix.size();
  if (eq < 3 || eq + 4 > rhs_end) return std::nullopt;
  return std::make_pair(text::trim(q.substr(3, eq - 3)),
                        text::trim(q.substr(eq + 4, rhs_end - eq - 4)));
}

}  // namespace

std::string mock_image_identity(const ImageRef& image) {
  if (image.content_digest && !image.content_digest->empty()) {
    return *image.content_digest;
  }
  if (!is_local_path(image.uri) &&
      image.uri.compare(0, kMockScheme.size(), kMockScheme) != 0) {
    throw Error(ErrorCode::kImageUnreadable,
                "mock backend cannot fetch '" + image.uri + "'");
  }
  return image_identity(image);
}

namespace requests {

json annotate(std::string_view t) {
  return request("annotate", json{{"text", t}});
}

json generate_question(std::string_view answer, std::string_view context) {
  return request("generate_question",
                 json{{"answer", answer}, {"context", context}});
}

json answer_text_question(std::string_view question, std::string_view context) {
  return request("answer_text_question",
                 json{{"question", question}, {"context", context}});
}

json answer_visual_question(std::string_view question, const ImageRef& image) {
  return request("answer_visual_question",
                 json{{"question", question},
                      {"image", mock_image_identity(image)}});
}

json nli(std::string_view premise, std::string_view hypothesis) {
  return request("nli", json{{"premise", premise}, {"hypothesis", hypothesis}});
}

json complete_text(std::string_view prompt, int n_samples) {
  return request("complete_text",
                 json{{"prompt", prompt}, {"n_samples", n_samples}});
}

json vnli_yes_no(std::string_view prompt, const ImageRef& image) {
  return request("vnli_yes_no", json{{"prompt", prompt},
                                     {"image", mock_image_identity(image)}});
}

}  // namespace requests

std::string fixture_key(const json& req) { return canonical_digest(req); }

FixtureTable FixtureTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open fixture file " + path.string());
  }
  FixtureTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
    if (!entry.is_object() || !entry.contains("value")) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected {key|request, value}");
    }
    if (entry.contains("key")) {
      table.add_key(entry.at("key").get<std::string>(), entry.at("value"));
    } else if (entry.contains("request")) {
      table.add(entry.at("request"), entry.at("value"));
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": missing key or request");
    }
  }
  return table;
}

void FixtureTable::add(const json& req, json value) {
  add_key(fixture_key(req), std::move(value));
}

void FixtureTable::add_key(const std::string& key, json value) {
  auto [it, inserted] = entries_.emplace(key, value);
  if (!inserted && it->second != value) {
    throw Error(ErrorCode::kInvalidConfig,
                "conflicting fixture values for key " + key);
  }
}

const json* FixtureTable::find(const json& req) const {
  auto it = entries_.find(fixture_key(req));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string FixtureTable::digest() const {
  return canonical_digest(json(entries_));
}

void FixtureTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write fixture file " + path.string());
  }
  for (const auto& [key, value] : entries_) {
    out << json{{"key", key}, {"value", value}}.dump() << '\n';
  }
}

MockBackend::MockBackend(FixtureTable fixtures, BackendConfig config)
    : fixtures_(std::move(fixtures)), config_(std::move(config)) {
  config_.validate();
}

std::string MockBackend::fingerprint() const {
  return config_.backend_id + ":" +
         canonical_digest(json{{"fixtures", fixtures_.digest()},
                               {"default_yes", config_.default_yes_probability},
                               {"default_vnli",
                                {config_.default_vnli.p_yes,
                                 config_.default_vnli.p_no}}})
             .substr(0, 16);
}

Annotation MockBackend::do_annotate(std::string_view t) {
  if (const json* v = fixtures_.find(requests::annotate(t))) {
    return v->get<Annotation>();
  }
  return rule_annotate(t);
}

std::string MockBackend::do_generate_question(std::string_view answer,
                                              std::string_view context) {
  if (const json* v =
          fixtures_.find(requests::generate_question(answer, context))) {
    return v->get<std::string>();
  }
  std::string q = std::string(context);
  text::replace_once(q, answer, "what");
  return strip_terminal_punct(text::trim(q)) + "?";
}

std::string MockBackend::do_answer_text_question(std::string_view question,
                                                 std::string_view context) {
  if (const json* v =
          fixtures_.find(requests::answer_text_question(question, context))) {
    return v->get<std::string>();
  }
  const std::string q = strip_terminal_punct(text::trim(question));
  const std::string c = strip_terminal_punct(text::trim(context));
  // Find "what" as a whole word.
  std::size_t pos = 0;
  while ((pos = q.find("what", pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || q[pos - 1] == ' ';
    const bool right_ok = pos + 4 == q.size() || q[pos + 4] == ' ';
    if (left_ok && right_ok) break;
    pos += 4;
  }
  if (pos == std::string::npos) return "";
  const std::string prefix = q.substr(0, pos);
  const std::string suffix = q.substr(pos + 4);
  if (c.size() <= prefix.size() + suffix.size()) return "";
  if (c.compare(0, prefix.size(), prefix) != 0) return "";
  if (c.compare(c.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return "";
  }
  return text::trim(
      c.substr(prefix.size(), c.size() - prefix.size() - suffix.size()));
}

VqaResponse MockBackend::do_answer_visual_question(std::string_view question,
                                                   const ImageRef& image) {
  if (const json* v =
          fixtures_.find(requests::answer_visual_question(question, image))) {
    VqaResponse r;
    if (v->is_number()) {
      r.answer_text = v->get<double>() >= 0.5 ? "yes" : "no";
      r.yes_probability = v->get<double>();
    } else if (v->is_string()) {
      r.answer_text = v->get<std::string>();
    } else {
      r.answer_text = v->value("answer", std::string());
      if (v->contains("yes_probability")) {
        r.yes_probability = v->at("yes_probability").get<double>();
      }
    }
    return r;
  }
  if (!is_yes_no_predicate(question)) return VqaResponse{"unknown", {}};
  double p = config_.default_yes_probability;
  if (auto operands = equality_operands(question);
      operands && text::iequals(operands->first, operands->second)) {
    p = 1.0;
  }
  return VqaResponse{p >= 0.5 ? "yes" : "no", p};
}

NliResponse MockBackend::do_nli(std::string_view premise,
                                std::string_view hypothesis) {
  if (const json* v = fixtures_.find(requests::nli(premise, hypothesis))) {
    return v->get<NliResponse>();
  }
  if (text::iequals(text::trim(premise), text::trim(hypothesis))) {
    return NliResponse{0.98, 0.01, 0.01};
  }
  return NliResponse{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
}

std::vector<std::string> MockBackend::do_complete_text(std::string_view prompt,
                                                       int n_samples) {
  if (const json* v =
          fixtures_.find(requests::complete_text(prompt, n_samples))) {
    return v->get<std::vector<std::string>>();
  }
  return {};
}

YesNoProbabilities MockBackend::do_vnli_yes_no(std::string_view prompt,
                                               const ImageRef& image) {
  if (const json* v = fixtures_.find(requests::vnli_yes_no(prompt, image))) {
    if (v->is_array()) {
      return YesNoProbabilities{v->at(0).get<double>(), v->at(1).get<double>()};
    }
    return YesNoProbabilities{v->at("p_yes").get<double>(),
                              v->at("p_no").get<double>()};
  }
  return config_.default_vnli;
}

}  // namespace alignvq
