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


// Dataset ingestion (SeeTRUE-style rows, Winoground records, caption lists,
// prompt groups, human ratings) and result artifacts (results JSONL,
// evaluation CSV).

#ifndef ALIGNVQ_DATASET_IO_HPP_
#define ALIGNVQ_DATASET_IO_HPP_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alignvq/types.hpp"

namespace alignvq {

/// Column order of SeeTRUE-style datasets.
inline constexpr std::array<std::string_view, 5> kSeeTrueColumns = {
    "image", "text", "label", "original_dataset_id", "dataset_source"};

/// Reads JSONL (".jsonl", ".json") or CSV (".csv", header row required).
/// Relative local image paths resolve against the dataset's directory.
/// Throws Error(kSchemaMismatch) naming missing and extra columns and
/// Error(kBadLabelValue) naming the 1-based data row.
std::vector<DatasetRecord> load_seetrue(const std::filesystem::path& path);

/// JSONL of {id, caption_0, caption_1, image_0, image_1}. Throws
/// Error(kSchemaMismatch) for missing fields or duplicate captions/images.
std::vector<WinogroundExample> load_winoground(const std::filesystem::path& path);

/// One caption per non-blank line, trimmed.
std::vector<std::string> load_captions(const std::filesystem::path& path);

struct PromptGroup {
  std::string prompt;
  std::vector<ImageRef> images;
  std::vector<int> labels;  // empty or one per image
};

/// JSONL of {prompt, images: [...], labels?: [...]}.
std::vector<PromptGroup> load_prompt_groups(const std::filesystem::path& path);

/// CSV with header "model_tag,human_mean".
std::vector<std::pair<std::string, double>> load_human_ratings(
    const std::filesystem::path& path);

/// Results JSONL lines, each optionally carrying "model_tag"; lines without
/// one are tagged with the file stem.
std::vector<std::pair<std::string, AlignmentResult>> load_tagged_results(
    const std::filesystem::path& path);

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// One compact JSON object per line: pair_id, qa_breakdown, score,
/// scorer_id, status (keys sorted).
void write_results_jsonl(std::ostream& out,
                         const std::vector<AlignmentResult>& results);

struct SourceReport {
  std::string dataset_source;
  std::size_t n = 0;
  double positives_fraction = 0.0;
  std::optional<double> roc_auc;  // absent for single-class sources
};

/// Per-source AUC in order of first appearance. Single-class sources get
/// no AUC and a logged warning.
std::vector<SourceReport> evaluate_by_source(
    const std::vector<DatasetRecord>& records, const std::vector<double>& scores);

/// Header "dataset_source,n,positives_fraction,roc_auc"; reals with six
/// decimals; "n/a" for a missing AUC.
void write_eval_csv(std::ostream& out, const std::vector<SourceReport>& rows);

/// Reads a whole file; throws Error(kIo).
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames; throws Error(kIo).
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace alignvq

#endif  // ALIGNVQ_DATASET_IO_HPP_
