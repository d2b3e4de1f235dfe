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

#include "alignvq/remote_backend.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "alignvq/error.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

json image_json(const ImageRef& image) {
  json j{{"uri", image.uri}};
  if (image.content_digest) j["content_digest"] = *image.content_digest;
  return j;
}

ErrorCode remote_error_code(const std::string& name) {
  if (name == "ImageUnreadable") return ErrorCode::kImageUnreadable;
  if (name == "PreconditionViolation") return ErrorCode::kPrecondition;
  if (name == "EmptyText") return ErrorCode::kEmptyText;
  return ErrorCode::kInvalidResponse;
}

// RAII slot in the in-flight window.
class InFlight {
 public:
  InFlight(std::counting_semaphore<>& slots, std::atomic<int>& count,
           std::atomic<int>& peak)
      : slots_(slots), count_(count) {
    slots_.acquire();
    const int now = ++count_;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
  }
  ~InFlight() {
    --count_;
    slots_.release();
  }
  InFlight(const InFlight&) = delete;
  InFlight& operator=(const InFlight&) = delete;

 private:
  std::counting_semaphore<>& slots_;
  std::atomic<int>& count_;
};

}  // namespace

RemoteBackend::RemoteBackend(BackendConfig config)
    : config_(std::move(config)) {
  config_.validate();
  if (!config_.endpoint) {
    throw Error(ErrorCode::kInvalidConfig, "remote backend needs an endpoint");
  }
  const std::string& ep = *config_.endpoint;
  const auto scheme = ep.find("://");
  if (scheme == std::string::npos || ep.compare(0, scheme, "http") != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "endpoint must be an http:// address, got '" + ep + "'");
  }
  const auto slash = ep.find('/', scheme + 3);
  base_ = ep.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : ep.substr(slash);
  slots_ = std::make_unique<std::counting_semaphore<>>(config_.max_in_flight);
}

json RemoteBackend::call(std::string_view task, const json& inputs) {
  const std::string body =
      json{{"task", task}, {"inputs", inputs}}.dump();
  const auto secs = static_cast<time_t>(std::floor(config_.timeout_s));
  const auto usecs = static_cast<time_t>(
      std::llround((config_.timeout_s - static_cast<double>(secs)) * 1e6));

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    }
    httplib::Result res;
    {
      InFlight slot(*slots_, in_flight_, peak_);
      httplib::Client client(base_);
      client.set_connection_timeout(secs, usecs);
      client.set_read_timeout(secs, usecs);
      client.set_write_timeout(secs, usecs);
      res = client.Post(path_, body, "application/json");
    }
    if (!res) {
      last_error = httplib::to_string(res.error());
      spdlog::warn("{} {}: attempt {} failed: {}", config_.backend_id, task,
                   attempt + 1, last_error);
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      spdlog::warn("{} {}: attempt {} got {}", config_.backend_id, task,
                   attempt + 1, last_error);
      continue;
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidResponse,
                  std::string(task) + ": malformed reply: " + e.what());
    }
    if (res->status != 200) {
      const json err = reply.value("error", json::object());
      throw Error(remote_error_code(err.value("code", std::string())),
                  std::string(task) + ": " +
                      err.value("message", "HTTP " +
                                               std::to_string(res->status)));
    }
    if (!reply.contains("outputs") || !reply["outputs"].is_object()) {
      throw Error(ErrorCode::kInvalidResponse,
                  std::string(task) + ": reply has no outputs object");
    }
    return reply["outputs"];
  }
  throw Error(ErrorCode::kBackendUnavailable,
              config_.backend_id + " " + std::string(task) + " failed after " +
                  std::to_string(config_.max_retries + 1) +
                  " attempts: " + last_error);
}

Annotation RemoteBackend::do_annotate(std::string_view text) {
  return call("annotate", json{{"text", text}}).get<Annotation>();
}

std::string RemoteBackend::do_generate_question(std::string_view answer,
                                                std::string_view context) {
  return call("generate_question",
              json{{"answer", answer}, {"context", context}})
      .at("question")
      .get<std::string>();
}

std::string RemoteBackend::do_answer_text_question(std::string_view question,
                                                   std::string_view context) {
  return call("answer_text_question",
              json{{"question", question}, {"context", context}})
      .at("answer")
      .get<std::string>();
}

VqaResponse RemoteBackend::do_answer_visual_question(std::string_view question,
                                                     const ImageRef& image) {
  const json out = call("answer_visual_question",
                        json{{"question", question}, {"image", image_json(image)}});
  VqaResponse r;
  r.answer_text = out.value("answer", std::string());
  if (out.contains("yes_probability") && !out["yes_probability"].is_null()) {
    r.yes_probability = out["yes_probability"].get<double>();
  }
  return r;
}

NliResponse RemoteBackend::do_nli(std::string_view premise,
                                  std::string_view hypothesis) {
  return call("nli", json{{"premise", premise}, {"hypothesis", hypothesis}})
      .get<NliResponse>();
}

std::vector<std::string> RemoteBackend::do_complete_text(
    std::string_view prompt, int n_samples) {
  return call("complete_text", json{{"prompt", prompt}, {"n_samples", n_samples}})
      .at("samples")
      .get<std::vector<std::string>>();
}

YesNoProbabilities RemoteBackend::do_vnli_yes_no(std::string_view prompt,
                                                 const ImageRef& image) {
  const json out =
      call("vnli_yes_no", json{{"prompt", prompt}, {"image", image_json(image)}});
  return YesNoProbabilities{out.at("p_yes").get<double>(),
                            out.at("p_no").get<double>()};
}

}  // namespace alignvq
