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

#ifndef ALIGNVQ_DIGEST_HPP_
#define ALIGNVQ_DIGEST_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace alignvq {

/// Lowercase hex SHA-256 of raw bytes.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's contents; throws Error(kImageUnreadable) when the
/// file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Digest of a JSON value in canonical form (sorted keys, compact).
std::string canonical_digest(const nlohmann::json& value);

}  // namespace alignvq

#endif  // ALIGNVQ_DIGEST_HPP_
