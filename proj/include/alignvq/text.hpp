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

// Small string helpers shared across modules. Text is UTF-8 throughout;
// user-visible offsets are measured in code points.

#ifndef ALIGNVQ_TEXT_HPP_
#define ALIGNVQ_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace alignvq::text {

std::string trim(std::string_view s);

// ASCII lowercase; non-ASCII bytes are left untouched.
std::string to_lower(std::string_view s);

bool iequals(std::string_view a, std::string_view b);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

// Number of code points in a UTF-8 string.
std::size_t codepoint_length(std::string_view s);

// Byte offset of the code point with index `cp` (cp may equal the length).
std::size_t byte_offset(std::string_view s, std::size_t cp);

// Substring by code-point range [begin, end).
std::string substr_codepoints(std::string_view s, std::size_t begin,
                              std::size_t end);

// Replaces the single occurrence of `needle`; returns false when absent.
bool replace_once(std::string& s, std::string_view needle,
                  std::string_view replacement);

std::size_t count_occurrences(std::string_view haystack,
                              std::string_view needle);

}  // namespace alignvq::text

#endif  // ALIGNVQ_TEXT_HPP_
