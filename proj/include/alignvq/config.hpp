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


// Application configuration. Sources apply in increasing precedence:
// built-in defaults, a JSON config file, ALIGNVQ_* environment variables,
// then command-line flags.

#ifndef ALIGNVQ_CONFIG_HPP_
#define ALIGNVQ_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "alignvq/backend.hpp"
#include "alignvq/congen.hpp"
#include "alignvq/vnli.hpp"
#include "alignvq/vq2.hpp"

namespace alignvq {

struct AppConfig {
  BackendConfig backend;
  Vq2Config vq2;
  VnliConfig vnli;
  ConGenConfig congen;
  std::size_t parallel = 1;
  std::optional<std::string> cache_dir;

  void validate() const;
};

/// Environment lookup; injectable so tests need not touch the process env.
using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

EnvLookup process_env();

/// Overlays keys present in `doc`. Relative paths resolve against
/// `base_dir`. Unknown top-level keys raise Error(kInvalidConfig).
void apply_config_json(AppConfig& cfg, const nlohmann::json& doc,
                       const std::filesystem::path& base_dir);

/// Reads and overlays a JSON config file.
void apply_config_file(AppConfig& cfg, const std::filesystem::path& path);

/// Overlays ALIGNVQ_ENDPOINT, ALIGNVQ_FIXTURES, ALIGNVQ_BACKEND_ID,
/// ALIGNVQ_TIMEOUT_S, ALIGNVQ_MAX_IN_FLIGHT, ALIGNVQ_MAX_RETRIES,
/// ALIGNVQ_PARALLEL, ALIGNVQ_CACHE_DIR, ALIGNVQ_VARIANT,
/// ALIGNVQ_F1_THRESHOLD and ALIGNVQ_SELECTION.
void apply_env(AppConfig& cfg, const EnvLookup& env);

/// Defaults, then the file named by `config_path` (or ALIGNVQ_CONFIG), then
/// the environment. Flags are applied by the caller.
AppConfig load_config(const std::optional<std::string>& config_path,
                      const EnvLookup& env);

}  // namespace alignvq

#endif  // ALIGNVQ_CONFIG_HPP_
