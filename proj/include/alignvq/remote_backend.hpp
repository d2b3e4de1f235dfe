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

// HTTP inference client.
//
// Every call is POST <endpoint> with body {"task": <name>, "inputs": {...}}
// and a 200 reply {"outputs": {...}}. Images travel as {"uri", "content_digest"}
// and are resolved by the server. Error replies carry
// {"error": {"code": <ErrorCode name>, "message": ...}}.
//
//   task                   inputs                   outputs
//   annotate               text                     tokens, entities, noun_chunks
//   generate_question      answer, context          question
//   answer_text_question   question, context        answer
//   answer_visual_question question, image          answer, yes_probability?
//   nli                    premise, hypothesis      entailment, neutral, contradiction
//   complete_text          prompt, n_samples        samples
//   vnli_yes_no            prompt, image            p_yes, p_no
//
// Transport failures and 5xx replies are retried (all tasks are idempotent);
// 4xx replies are not.

#ifndef ALIGNVQ_REMOTE_BACKEND_HPP_
#define ALIGNVQ_REMOTE_BACKEND_HPP_

#include <atomic>
#include <memory>
#include <semaphore>
#include <string>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"

namespace alignvq {

class RemoteBackend : public ModelBackend {
 public:
  /// Throws Error(kInvalidConfig) without an http:// endpoint.
  explicit RemoteBackend(BackendConfig config);

  std::string id() const override { return config_.backend_id; }
  std::string fingerprint() const override {
    return config_.backend_id + "@" + *config_.endpoint;
  }

  /// Highest number of requests observed in flight at once.
  int peak_in_flight() const { return peak_.load(); }

  /// Sends one request; exposed for protocol tests.
  nlohmann::json call(std::string_view task, const nlohmann::json& inputs);

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
  BackendConfig config_;
  std::string base_;  // scheme://host:port
  std::string path_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
};

}  // namespace alignvq

#endif  // ALIGNVQ_REMOTE_BACKEND_HPP_
