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

// Fixture-driven deterministic backend.
//
// A fixture file is JSONL; each line is either {"key": <hex>, "value": ...}
// or {"request": {"task": ..., "inputs": {...}}, "value": ...}, where the key
// is the canonical digest of the request. Requests without an entry fall
// back to fixed rules (see MockBackend), so partial fixtures are fine.

#ifndef ALIGNVQ_MOCK_BACKEND_HPP_
#define ALIGNVQ_MOCK_BACKEND_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"

namespace alignvq {

// Canonical request tuples, shared by the mock lookup and fixture authoring.
namespace requests {
nlohmann::json annotate(std::string_view text);
nlohmann::json generate_question(std::string_view answer,
                                 std::string_view context);
nlohmann::json answer_text_question(std::string_view question,
                                    std::string_view context);
nlohmann::json answer_visual_question(std::string_view question,
                                      const ImageRef& image);
nlohmann::json nli(std::string_view premise, std::string_view hypothesis);
nlohmann::json complete_text(std::string_view prompt, int n_samples);
nlohmann::json vnli_yes_no(std::string_view prompt, const ImageRef& image);
}  // namespace requests

std::string fixture_key(const nlohmann::json& request);

class FixtureTable {
 public:
  FixtureTable() = default;

  /// Throws Error(kIo) when unreadable, Error(kInvalidConfig) on malformed
  /// lines or conflicting duplicate keys.
  static FixtureTable load(const std::filesystem::path& path);

  void add(const nlohmann::json& request, nlohmann::json value);
  void add_key(const std::string& key, nlohmann::json value);

  const nlohmann::json* find(const nlohmann::json& request) const;
  std::size_t size() const { return entries_.size(); }
  std::string digest() const;

  /// Writes {"key","value"} lines in key order.
  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, nlohmann::json> entries_;
};

/// Deterministic backend: fixture lookups first, then these rules.
///  - annotate: the built-in rule annotator.
///  - generate_question: the answer span in the context is replaced by
///    "what" ("two girls are sitting on what?").
///  - answer_text_question: inverts that template against the context,
///    returning "" when the question does not line up.
///  - answer_visual_question: "is X == Y in this image?" with X equal to Y
///    (case-insensitive) answers yes with 1.0; other predicate questions use
///    default_yes_probability; open questions answer "unknown".
///  - nli: identical strings entail (0.98/0.01/0.01), otherwise uniform.
///  - complete_text: no samples.
///  - vnli_yes_no: default_vnli.
/// Images are resolved to their identity; http(s) and other non-mock
/// schemes are unreachable and raise Error(kImageUnreadable).
class MockBackend : public ModelBackend {
 public:
  explicit MockBackend(FixtureTable fixtures, BackendConfig config = {});

  std::string id() const override { return config_.backend_id; }
  std::string fingerprint() const override;
  const FixtureTable& fixtures() const { return fixtures_; }

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
  FixtureTable fixtures_;
  BackendConfig config_;
};

/// Resolves an image for keying; throws Error(kImageUnreadable) for missing
/// files and for schemes other than mock:// without a content digest.
std::string mock_image_identity(const ImageRef& image);

}  // namespace alignvq

#endif  // ALIGNVQ_MOCK_BACKEND_HPP_
