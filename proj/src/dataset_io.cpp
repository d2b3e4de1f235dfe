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


#include "alignvq/dataset_io.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "alignvq/error.hpp"
#include "alignvq/metrics.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

// Resolves a relative local image path against the directory of the file
// that mentions it, so datasets can be moved together with their images.
ImageRef resolve_image(ImageRef image, const fs::path& base_dir) {
  if (image.uri.empty()) return image;
  if (is_local_path(image.uri)) {
    fs::path p(canonical_uri(image.uri));
    if (p.is_relative()) p = base_dir / p;
    image.uri = p.lexically_normal().string();
  }
  return image;
}

// Iterates non-blank JSONL lines with their 1-based line numbers.
template <typename Fn>
void for_each_jsonl(const fs::path& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: invalid JSON: {}", path.string(), line_no,
                              e.what()));
    }
    if (!value.is_object()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: expected a JSON object", path.string(),
                              line_no));
    }
    fn(value, line_no);
  }
}

void check_columns(const std::vector<std::string>& present,
                   const fs::path& path) {
  const std::set<std::string> expected(kSeeTrueColumns.begin(),
                                       kSeeTrueColumns.end());
  const std::set<std::string> have(present.begin(), present.end());
  std::vector<std::string> missing, extra;
  for (const auto& c : expected) {
    if (!have.count(c)) missing.push_back(c);
  }
  for (const auto& c : present) {
    if (!expected.count(c)) extra.push_back(c);
  }
  if (missing.empty() && extra.empty() && present.size() == expected.size()) {
    return;
  }
  std::string msg = path.string() + ": expected columns " +
                    fmt::format("{}", fmt::join(kSeeTrueColumns, ","));
  if (!missing.empty()) msg += "; missing " + fmt::format("{}", fmt::join(missing, ","));
  if (!extra.empty()) msg += "; extra " + fmt::format("{}", fmt::join(extra, ","));
  if (missing.empty() && extra.empty()) msg += "; duplicate columns";
  throw Error(ErrorCode::kSchemaMismatch, msg);
}

int parse_label(const json& value, std::size_t row) {
  if (value.is_number_integer()) {
    const auto v = value.get<long long>();
    if (v == 0 || v == 1) return static_cast<int>(v);
  } else if (value.is_string()) {
    const std::string s = text::trim(value.get<std::string>());
    if (s == "0" || s == "1") return s == "1";
  }
  throw Error(ErrorCode::kBadLabelValue,
              fmt::format("row {}: label {} is not 0 or 1", row, value.dump()));
}

std::string string_field(const json& obj, std::string_view key,
                         const fs::path& path, std::size_t row) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchemaMismatch,
                fmt::format("{}: row {}: field '{}' must be a string",
                            path.string(), row, key));
  }
  return it->get<std::string>();
}

DatasetRecord make_record(ImageRef image, std::string text, int label,
                          std::string original_id, std::string source,
                          std::size_t row) {
  if (text::trim(source).empty()) {
    throw Error(ErrorCode::kSchemaMismatch,
                fmt::format("row {}: dataset_source is empty", row));
  }
  return DatasetRecord{std::move(image), std::move(text), label,
                       std::move(original_id), std::move(source)};
}

std::vector<DatasetRecord> load_seetrue_jsonl(const fs::path& path) {
  std::vector<DatasetRecord> out;
  std::size_t row = 0;
  const fs::path base = path.parent_path();
  for_each_jsonl(path, [&](const json& obj, std::size_t) {
    ++row;
    std::vector<std::string> keys;
    for (const auto& item : obj.items()) keys.push_back(item.key());
    check_columns(keys, path);
    ImageRef image;
    try {
      image = obj.at("image").get<ImageRef>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}: row {}: bad image field", path.string(), row));
    }
    const json& id = obj.at("original_dataset_id");
    out.push_back(make_record(
        resolve_image(std::move(image), base), string_field(obj, "text", path, row),
        parse_label(obj.at("label"), row),
        id.is_string() ? id.get<std::string>() : id.dump(),
        string_field(obj, "dataset_source", path, row), row));
  });
  return out;
}

std::vector<DatasetRecord> load_seetrue_csv(const fs::path& path) {
  auto in = open_input(path);
  const auto rows = parse_csv(in);
  std::vector<DatasetRecord> out;
  if (rows.empty()) return out;
  const auto& header = rows.front();
  check_columns(header, path);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  const fs::path base = path.parent_path();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r];
    if (fields.size() == 1 && text::trim(fields[0]).empty()) continue;
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}: row {} has {} fields, expected {}",
                              path.string(), r, fields.size(), header.size()));
    }
    out.push_back(make_record(
        resolve_image(ImageRef{fields[col["image"]], std::nullopt}, base),
        fields[col["text"]], parse_label(json(fields[col["label"]]), r),
        fields[col["original_dataset_id"]], fields[col["dataset_source"]], r));
  }
  return out;
}

std::string format_real(double v) { return fmt::format("{:.6f}", v); }

}  // namespace

std::string read_file(const fs::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view data) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  static std::atomic<unsigned long> counter{0};
  tmp += fmt::format(".tmp.{}.{}", ::getpid(), counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + path.string());
  }
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get(c);
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && in.peek() == '\n') {
      // handled by the '\n' that follows
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kSchemaMismatch, "CSV ends inside a quoted field");
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<DatasetRecord> load_seetrue(const fs::path& path) {
  const std::string ext = text::to_lower(path.extension().string());
  if (ext == ".csv") return load_seetrue_csv(path);
  return load_seetrue_jsonl(path);
}

std::vector<WinogroundExample> load_winoground(const fs::path& path) {
  std::vector<WinogroundExample> out;
  const fs::path base = path.parent_path();
  for_each_jsonl(path, [&](const json& obj, std::size_t line_no) {
    WinogroundExample ex;
    try {
      ex = obj.get<WinogroundExample>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
    for (auto& image : ex.images) image = resolve_image(std::move(image), base);
    if (text::trim(ex.captions[0]).empty() || text::trim(ex.captions[1]).empty()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: empty caption", path.string(), line_no));
    }
    if (ex.captions[0] == ex.captions[1]) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: duplicate captions", path.string(), line_no));
    }
    if (ex.images[0] == ex.images[1]) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: duplicate images", path.string(), line_no));
    }
    out.push_back(std::move(ex));
  });
  return out;
}

std::vector<std::string> load_captions(const fs::path& path) {
  auto in = open_input(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = text::trim(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<PromptGroup> load_prompt_groups(const fs::path& path) {
  std::vector<PromptGroup> out;
  const fs::path base = path.parent_path();
  for_each_jsonl(path, [&](const json& obj, std::size_t line_no) {
    PromptGroup g;
    try {
      g.prompt = obj.at("prompt").get<std::string>();
      for (const auto& img : obj.at("images")) {
        g.images.push_back(resolve_image(img.get<ImageRef>(), base));
      }
      if (obj.contains("labels")) {
        for (const auto& l : obj.at("labels")) g.labels.push_back(parse_label(l, line_no));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
    if (g.images.empty()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: no images", path.string(), line_no));
    }
    if (!g.labels.empty() && g.labels.size() != g.images.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: {} labels for {} images", path.string(),
                              line_no, g.labels.size(), g.images.size()));
    }
    out.push_back(std::move(g));
  });
  return out;
}

std::vector<std::pair<std::string, double>> load_human_ratings(
    const fs::path& path) {
  auto in = open_input(path);
  const auto rows = parse_csv(in);
  if (rows.empty() || rows.front() != std::vector<std::string>{"model_tag", "human_mean"}) {
    throw Error(ErrorCode::kSchemaMismatch,
                path.string() + ": expected header model_tag,human_mean");
  }
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() == 1 && text::trim(rows[r][0]).empty()) continue;
    if (rows[r].size() != 2) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}: row {} needs 2 fields", path.string(), r));
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(rows[r][1], &used);
      if (used != rows[r][1].size()) throw std::invalid_argument("trailing");
      out.emplace_back(rows[r][0], v);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}: row {}: '{}' is not a number", path.string(),
                              r, rows[r][1]));
    }
  }
  return out;
}

std::vector<std::pair<std::string, AlignmentResult>> load_tagged_results(
    const fs::path& path) {
  std::vector<std::pair<std::string, AlignmentResult>> out;
  const std::string stem = path.stem().string();
  for_each_jsonl(path, [&](const json& obj, std::size_t line_no) {
    try {
      out.emplace_back(obj.value("model_tag", stem), obj.get<AlignmentResult>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch,
                  fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  });
  return out;
}

void write_results_jsonl(std::ostream& out,
                         const std::vector<AlignmentResult>& results) {
  for (const auto& r : results) out << json(r).dump() << '\n';
}

std::vector<SourceReport> evaluate_by_source(
    const std::vector<DatasetRecord>& records, const std::vector<double>& scores) {
  if (records.size() != scores.size()) {
    throw Error(ErrorCode::kShapeMismatch, "records and scores differ in length");
  }
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, std::vector<int>>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& source = records[i].dataset_source;
    auto [it, inserted] = groups.try_emplace(source);
    if (inserted) order.push_back(source);
    it->second.first.push_back(scores[i]);
    it->second.second.push_back(records[i].label);
  }
  std::vector<SourceReport> out;
  for (const auto& source : order) {
    const auto& [s, l] = groups.at(source);
    SourceReport row;
    row.dataset_source = source;
    row.n = s.size();
    std::size_t pos = 0;
    for (int v : l) pos += v == 1;
    row.positives_fraction = static_cast<double>(pos) / static_cast<double>(row.n);
    if (pos == 0 || pos == row.n) {
      spdlog::warn("{}: only one label class; ROC AUC reported as n/a", source);
    } else {
      row.roc_auc = roc_auc(s, l);
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_eval_csv(std::ostream& out, const std::vector<SourceReport>& rows) {
  out << "dataset_source,n,positives_fraction,roc_auc\n";
  for (const auto& r : rows) {
    out << csv_escape(r.dataset_source) << ',' << r.n << ','
        << format_real(r.positives_fraction) << ','
        << (r.roc_auc ? format_real(*r.roc_auc) : std::string("n/a")) << '\n';
  }
}

}  // namespace alignvq
