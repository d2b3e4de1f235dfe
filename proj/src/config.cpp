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


#include "alignvq/config.hpp"

#include <cstdlib>
#include <set>

#include "alignvq/dataset_io.hpp"
#include "alignvq/error.hpp"

namespace alignvq {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string resolve_path(const std::string& p, const fs::path& base_dir) {
  fs::path path(p);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return path.lexically_normal().string();
}

double parse_double(std::string_view name, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::kInvalidConfig,
              std::string(name) + ": '" + v + "' is not a number");
}

long parse_int(std::string_view name, const std::string& v) {
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used == v.size()) return n;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::kInvalidConfig,
              std::string(name) + ": '" + v + "' is not an integer");
}

void check_keys(const json& obj, std::string_view where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(where) + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw Error(ErrorCode::kInvalidConfig, "unknown key '" + item.key() +
                                                 "' in " + std::string(where));
    }
  }
}

void apply_backend_json(BackendConfig& b, const json& j,
                        const fs::path& base_dir) {
  check_keys(j, "backend",
             {"backend_id", "endpoint", "timeout_s", "max_in_flight",
              "fixture_path", "max_retries", "default_yes_probability",
              "default_vnli"});
  if (j.contains("backend_id")) b.backend_id = j["backend_id"].get<std::string>();
  if (j.contains("endpoint")) b.endpoint = j["endpoint"].get<std::string>();
  if (j.contains("timeout_s")) b.timeout_s = j["timeout_s"].get<double>();
  if (j.contains("max_in_flight")) b.max_in_flight = j["max_in_flight"].get<int>();
  if (j.contains("fixture_path")) {
    b.fixture_path = resolve_path(j["fixture_path"].get<std::string>(), base_dir);
  }
  if (j.contains("max_retries")) b.max_retries = j["max_retries"].get<int>();
  if (j.contains("default_yes_probability")) {
    b.default_yes_probability = j["default_yes_probability"].get<double>();
  }
  if (j.contains("default_vnli")) {
    const auto& v = j["default_vnli"];
    b.default_vnli = {v.at(0).get<double>(), v.at(1).get<double>()};
  }
}

void apply_congen_json(ConGenConfig& c, const json& j,
                       const fs::path& base_dir) {
  check_keys(j, "congen", {"n_candidates", "selection", "exemplars_path"});
  if (j.contains("n_candidates")) c.n_candidates = j["n_candidates"].get<int>();
  if (j.contains("selection")) {
    c.selection = parse_selection(j["selection"].get<std::string>());
  }
  if (j.contains("exemplars_path")) {
    c.exemplars =
        load_exemplars(resolve_path(j["exemplars_path"].get<std::string>(), base_dir));
  }
}

}  // namespace

void AppConfig::validate() const {
  backend.validate();
  vq2.validate();
  vnli.validate();
  congen.validate();
  if (parallel < 1) {
    throw Error(ErrorCode::kInvalidConfig, "parallel must be >= 1");
  }
}

EnvLookup process_env() {
  return [](std::string_view name) -> std::optional<std::string> {
    const char* v = std::getenv(std::string(name).c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

void apply_config_json(AppConfig& cfg, const json& doc,
                       const fs::path& base_dir) {
  check_keys(doc, "config",
             {"backend", "vq2", "vnli", "congen", "parallel", "cache_dir"});
  try {
    if (doc.contains("backend")) apply_backend_json(cfg.backend, doc["backend"], base_dir);
    if (doc.contains("vq2")) {
      json merged = cfg.vq2;
      merged.update(doc["vq2"]);
      cfg.vq2 = merged.get<Vq2Config>();
    }
    if (doc.contains("vnli")) {
      json merged = cfg.vnli;
      merged.update(doc["vnli"]);
      cfg.vnli = merged.get<VnliConfig>();
    }
    if (doc.contains("congen")) apply_congen_json(cfg.congen, doc["congen"], base_dir);
    if (doc.contains("parallel")) {
      const auto n = doc["parallel"].get<long>();
      if (n < 1) throw Error(ErrorCode::kInvalidConfig, "parallel must be >= 1");
      cfg.parallel = static_cast<std::size_t>(n);
    }
    if (doc.contains("cache_dir")) {
      cfg.cache_dir = resolve_path(doc["cache_dir"].get<std::string>(), base_dir);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad config value: ") + e.what());
  }
}

void apply_config_file(AppConfig& cfg, const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                path.string() + ": invalid JSON: " + e.what());
  }
  apply_config_json(cfg, doc, path.parent_path());
}

void apply_env(AppConfig& cfg, const EnvLookup& env) {
  if (auto v = env("ALIGNVQ_BACKEND_ID")) cfg.backend.backend_id = *v;
  if (auto v = env("ALIGNVQ_ENDPOINT")) {
    if (v->empty()) {
      cfg.backend.endpoint.reset();
    } else {
      cfg.backend.endpoint = *v;
    }
  }
  if (auto v = env("ALIGNVQ_FIXTURES")) cfg.backend.fixture_path = *v;
  if (auto v = env("ALIGNVQ_TIMEOUT_S")) {
    cfg.backend.timeout_s = parse_double("ALIGNVQ_TIMEOUT_S", *v);
  }
  if (auto v = env("ALIGNVQ_MAX_IN_FLIGHT")) {
    cfg.backend.max_in_flight =
        static_cast<int>(parse_int("ALIGNVQ_MAX_IN_FLIGHT", *v));
  }
  if (auto v = env("ALIGNVQ_MAX_RETRIES")) {
    cfg.backend.max_retries = static_cast<int>(parse_int("ALIGNVQ_MAX_RETRIES", *v));
  }
  if (auto v = env("ALIGNVQ_PARALLEL")) {
    const long n = parse_int("ALIGNVQ_PARALLEL", *v);
    if (n < 1) throw Error(ErrorCode::kInvalidConfig, "ALIGNVQ_PARALLEL must be >= 1");
    cfg.parallel = static_cast<std::size_t>(n);
  }
  if (auto v = env("ALIGNVQ_CACHE_DIR")) cfg.cache_dir = *v;
  if (auto v = env("ALIGNVQ_VARIANT")) cfg.vq2.variant = parse_variant(*v);
  if (auto v = env("ALIGNVQ_F1_THRESHOLD")) {
    cfg.vq2.qg_cfg.f1_threshold = parse_double("ALIGNVQ_F1_THRESHOLD", *v);
  }
  if (auto v = env("ALIGNVQ_SELECTION")) cfg.congen.selection = parse_selection(*v);
}

AppConfig load_config(const std::optional<std::string>& config_path,
                      const EnvLookup& env) {
  AppConfig cfg;
  std::optional<std::string> path = config_path;
  if (!path) path = env("ALIGNVQ_CONFIG");
  if (path && !path->empty()) apply_config_file(cfg, *path);
  apply_env(cfg, env);
  return cfg;
}

}  // namespace alignvq
