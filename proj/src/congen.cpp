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

#include "alignvq/congen.hpp"

#include <fstream>
#include <set>

#include "alignvq/error.hpp"
#include "alignvq/parallel.hpp"
#include "alignvq/text.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

constexpr std::string_view kInstruction =
    "Rewrite the caption so that it contradicts the original by changing a "
    "single detail (an object, attribute, count, relation or action). A good "
    "rewrite cannot be true of the same image; a bad rewrite still could be.";
constexpr std::string_view kCaptionTag = "Caption: ";
constexpr std::string_view kGoodTag = "Good rewrite: ";
constexpr std::string_view kBadTag = "Bad rewrite: ";

std::string one_line(std::string_view s) {
  std::string out = text::trim(s);
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

std::string_view selection_name(Selection s) {
  return s == Selection::kMaxContradiction ? "max_contradiction"
                                           : "min_entailment";
}

Selection parse_selection(std::string_view name) {
  if (name == "max_contradiction") return Selection::kMaxContradiction;
  if (name == "min_entailment") return Selection::kMinEntailment;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown selection '" + std::string(name) + "'");
}

const std::vector<Exemplar>& default_exemplars() {
  static const std::vector<Exemplar> kExemplars = {
      {"a knife sitting next to carrots on top of a cutting board",
       "a spoon sitting next to carrots on top of a cutting board",
       Polarity::kPositive},
      {"two dogs running across a grassy field",
       "three dogs running across a grassy field", Polarity::kPositive},
      {"a man in a red shirt riding a bicycle",
       "a man in a blue shirt riding a bicycle", Polarity::kPositive},
      {"a cat sleeping on top of a wooden chair",
       "a cat sleeping underneath a wooden chair", Polarity::kPositive},
      {"a woman holding an umbrella in the rain",
       "a woman holding a surfboard in the rain", Polarity::kPositive},
      {"a plate of pasta next to a glass of wine",
       "an empty plate next to a glass of wine", Polarity::kPositive},
      {"a child throwing a ball to a dog",
       "a dog throwing a ball to a child", Polarity::kPositive},
      {"a bus parked on the side of a street",
       "a bus parked on the side of a road", Polarity::kNegative},
      {"a bowl of fruit on a kitchen table",
       "a bowl of fruit on a table in a kitchen", Polarity::kNegative},
      {"a man surfing a large wave", "a person surfing a large wave",
       Polarity::kNegative},
      {"two giraffes standing near a tree",
       "two giraffes standing near a tall tree", Polarity::kNegative},
      {"a laptop computer sitting on a desk",
       "a laptop sitting on a desk", Polarity::kNegative},
      {"a little girl eating a slice of pizza",
       "a young girl eating a slice of pizza", Polarity::kNegative},
      {"a train traveling down the tracks",
       "a train moving along the tracks", Polarity::kNegative},
      {"a black and white photo of a city street",
       "a black and white picture of a city street", Polarity::kNegative},
  };
  return kExemplars;
}

std::vector<Exemplar> load_exemplars(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Exemplar> out;
  try {
    const json doc = json::parse(in);
    for (const auto& e : doc) {
      const auto polarity = e.value("polarity", std::string("positive"));
      if (polarity != "positive" && polarity != "negative") {
        throw Error(ErrorCode::kInvalidConfig,
                    "exemplar polarity must be positive or negative");
      }
      out.push_back({e.at("caption").get<std::string>(),
                     e.at("rewrite").get<std::string>(),
                     polarity == "positive" ? Polarity::kPositive
                                            : Polarity::kNegative});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                path.string() + ": bad exemplar file: " + e.what());
  }
  return out;
}

void ConGenConfig::validate() const {
  if (n_candidates < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_candidates must be >= 1");
  }
  if (exemplars.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "exemplar list is empty");
  }
}

void to_json(json& j, const ConGenOutput& v) {
  json candidates = json::array();
  for (const auto& c : v.candidates) {
    candidates.push_back(json{{"caption", c.caption}, {"nli", c.nli}});
  }
  j = json{{"original", v.original},
           {"chosen", v.chosen},
           {"selection_score", v.selection_score},
           {"candidates", std::move(candidates)}};
}

void from_json(const json& j, ConGenOutput& v) {
  v.original = j.at("original").get<std::string>();
  v.chosen = j.at("chosen").get<std::string>();
  v.selection_score = j.at("selection_score").get<double>();
  v.candidates.clear();
  for (const auto& c : j.at("candidates")) {
    v.candidates.push_back(
        {c.at("caption").get<std::string>(), c.at("nli").get<NliResponse>()});
  }
}

std::string render_congen_prompt(std::string_view caption,
                                 const ConGenConfig& cfg) {
  cfg.validate();
  const std::string target = one_line(caption);
  if (target.empty()) {
    throw Error(ErrorCode::kEmptyText, "cannot contradict an empty caption");
  }
  std::string prompt(kInstruction);
  prompt += "\n\n";
  for (const auto& e : cfg.exemplars) {
    prompt += kCaptionTag;
    prompt += one_line(e.caption);
    prompt += '\n';
    prompt += e.polarity == Polarity::kPositive ? kGoodTag : kBadTag;
    prompt += one_line(e.rewrite);
    prompt += "\n\n";
  }
  prompt += kCaptionTag;
  prompt += target;
  prompt += '\n';
  prompt += text::trim(kGoodTag);
  return prompt;
}

std::size_t count_prompt_exemplars(std::string_view prompt) {
  const std::size_t blocks = text::count_occurrences(prompt, kCaptionTag);
  return blocks == 0 ? 0 : blocks - 1;  // the last block is the target
}

std::vector<std::string> clean_candidates(std::string_view original,
                                          const std::vector<std::string>& raw) {
  const std::string orig = text::to_lower(one_line(original));
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::string c = one_line(r);
    if (c.empty()) continue;
    const std::string key = text::to_lower(c);
    if (key == orig) continue;
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t select_candidate(const std::vector<ScoredCandidate>& candidates,
                             Selection selection) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoValidCandidates, "no candidates to select from");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const NliResponse& c = candidates[i].nli;
    const NliResponse& b = candidates[best].nli;
    const bool better = selection == Selection::kMaxContradiction
                            ? c.contradict_p > b.contradict_p
                            : c.entail_p < b.entail_p;
    if (better) best = i;
  }
  return best;
}

ConGenOutput generate_contradiction(ModelBackend& backend,
                                    std::string_view caption,
                                    const ConGenConfig& cfg,
                                    std::size_t parallelism) {
  const std::string prompt = render_congen_prompt(caption, cfg);
  const std::string original = one_line(caption);
  const auto cleaned =
      clean_candidates(original, backend.complete_text(prompt, cfg.n_candidates));
  if (cleaned.empty()) {
    throw Error(ErrorCode::kNoValidCandidates,
                "no usable contradiction for '" + original + "'");
  }
  ConGenOutput out;
  out.original = original;
  out.candidates = parallel_map(cleaned.size(), parallelism, [&](std::size_t i) {
    return ScoredCandidate{cleaned[i], backend.nli(original, cleaned[i])};
  });
  const std::size_t best = select_candidate(out.candidates, cfg.selection);
  out.chosen = out.candidates[best].caption;
  out.selection_score = cfg.selection == Selection::kMaxContradiction
                            ? out.candidates[best].nli.contradict_p
                            : out.candidates[best].nli.entail_p;
  return out;
}

}  // namespace alignvq
