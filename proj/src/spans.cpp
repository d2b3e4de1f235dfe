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

#include "alignvq/spans.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "alignvq/error.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

struct Candidate {
  TokenRange range;
  SpanKind kind;
};

bool uninformative(const Annotation& a, const TokenRange& r) {
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const Pos p = a.tokens[i].pos;
    if (p != Pos::kPron && p != Pos::kDet && p != Pos::kPunct) return false;
  }
  return true;
}

std::vector<TokenRange> adjectival_runs(const Annotation& a) {
  std::vector<TokenRange> runs;
  const auto& t = a.tokens;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i].pos != Pos::kAdj) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end + 1 < t.size() && t[end].pos == Pos::kCconj &&
           t[end + 1].pos == Pos::kAdj) {
      end += 2;
    }
    runs.push_back({i, end, "ADJP"});
    i = end;
  }
  return runs;
}

// Token range covered by the subtree of `root` (heads form a tree).
TokenRange subtree(const Annotation& a, std::size_t root) {
  std::size_t lo = root;
  std::size_t hi = root;
  const std::size_t n = a.tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Walk up from i; bounded by n steps so malformed cycles terminate.
    int h = static_cast<int>(i);
    for (std::size_t steps = 0; steps <= n && h >= 0; ++steps) {
      if (static_cast<std::size_t>(h) == root) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
        break;
      }
      h = a.tokens[static_cast<std::size_t>(h)].head;
    }
  }
  return {lo, hi + 1, "PP"};
}

std::vector<TokenRange> prepositional_phrases(const Annotation& a) {
  std::vector<TokenRange> out;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const Token& tok = a.tokens[i];
    if (tok.pos != Pos::kAdp || tok.dep == "fixed") continue;
    TokenRange r = subtree(a, i);
    // A bare preposition without an object is not an answer.
    if (r.end - r.begin < 2 || r.begin != i) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace

void SpanConfig::validate() const {
  if (max_candidates < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_candidates must be >= 1");
  }
}

void to_json(nlohmann::json& j, const SpanConfig& v) {
  j = nlohmann::json{{"include_named_entities", v.include_named_entities},
                     {"include_noun_phrases", v.include_noun_phrases},
                     {"extended_spans", v.extended_spans},
                     {"max_candidates", v.max_candidates}};
}

void from_json(const nlohmann::json& j, SpanConfig& v) {
  SpanConfig d;
  v.include_named_entities =
      j.value("include_named_entities", d.include_named_entities);
  v.include_noun_phrases = j.value("include_noun_phrases", d.include_noun_phrases);
  v.extended_spans = j.value("extended_spans", d.extended_spans);
  v.max_candidates = j.value("max_candidates", d.max_candidates);
}

std::vector<AnswerSpan> extract_candidates(const Annotation& annotation,
                                           std::string_view t,
                                           const SpanConfig& cfg) {
  cfg.validate();
  if (text::trim(t).empty()) {
    throw Error(ErrorCode::kEmptyText, "cannot extract spans from empty text");
  }

  std::vector<Candidate> ordered;
  auto add_group = [&](std::vector<TokenRange> ranges, SpanKind kind) {
    std::stable_sort(ranges.begin(), ranges.end(),
                     [](const TokenRange& x, const TokenRange& y) {
                       return std::tie(x.begin, x.end) < std::tie(y.begin, y.end);
                     });
    for (auto& r : ranges) ordered.push_back({r, kind});
  };
  if (cfg.include_named_entities) {
    add_group(annotation.entities, SpanKind::kNamedEntity);
  }
  if (cfg.include_noun_phrases) {
    add_group(annotation.noun_chunks, SpanKind::kNounPhrase);
  }
  if (cfg.extended_spans) {
    std::vector<Candidate> ext;
    for (auto& r : adjectival_runs(annotation)) {
      ext.push_back({r, SpanKind::kAdjectival});
    }
    for (auto& r : prepositional_phrases(annotation)) {
      ext.push_back({r, SpanKind::kLocative});
    }
    std::stable_sort(ext.begin(), ext.end(),
                     [](const Candidate& x, const Candidate& y) {
                       return std::tie(x.range.begin, x.range.end) <
                              std::tie(y.range.begin, y.range.end);
                     });
    ordered.insert(ordered.end(), ext.begin(), ext.end());
  }

  std::set<std::string> seen;
  std::vector<std::pair<AnswerSpan, std::size_t>> kept;  // span, priority rank
  for (const auto& c : ordered) {
    if (kept.size() >= static_cast<std::size_t>(cfg.max_candidates)) break;
    if (uninformative(annotation, c.range)) continue;
    const auto [start, end] = char_extent(annotation, c.range);
    AnswerSpan span{text::substr_codepoints(t, start, end), start, end, c.kind};
    if (!seen.insert(text::to_lower(span.surface)).second) continue;
    kept.emplace_back(std::move(span), kept.size());
  }

  std::stable_sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.char_start, x.first.char_end, x.second) <
           std::tie(y.first.char_start, y.first.char_end, y.second);
  });
  std::vector<AnswerSpan> out;
  out.reserve(kept.size());
  for (auto& [span, rank] : kept) out.push_back(std::move(span));
  return out;
}

std::vector<AnswerSpan> extract_candidates(ModelBackend& backend,
                                           std::string_view t,
                                           const SpanConfig& cfg) {
  cfg.validate();
  return extract_candidates(backend.annotate(t), t, cfg);
}

}  // namespace alignvq
