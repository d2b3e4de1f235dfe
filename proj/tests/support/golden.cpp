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


#include "golden.hpp"

#include <fstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "alignvq/mock_backend.hpp"
#include "alignvq/questions.hpp"
#include "alignvq/spans.hpp"
#include "alignvq/text.hpp"
#include "alignvq/vnli.hpp"
#include "alignvq/vq2.hpp"

namespace golden {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace alignvq;

std::string padded_lower(const std::string& s) {
  std::string out = " ";
  for (const auto& w : text::split_whitespace(text::to_lower(s))) out += w + " ";
  return out;
}

// Low probability when the answer is not a phrase of the aligned caption, so
// the edited detail (including swapped attributes) is what the VQA fixture
// rejects.
double yes_probability(const std::string& answer, const std::string& aligned,
                       std::size_t index) {
  if (padded_lower(aligned).find(padded_lower(answer)) == std::string::npos) {
    return 0.1 + 0.01 * static_cast<double>(index);
  }
  return 0.9 - 0.01 * static_cast<double>(index);
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& caption_pairs() {
  static const std::vector<std::pair<std::string, std::string>> kPairs = {
      {"a knife sitting next to carrots on top of a cutting board",
       "a spoon sitting next to carrots on top of a cutting board"},
      {"two girls are sitting on some grass",
       "three girls are sitting on some grass"},
      {"a black apple and a green backpack",
       "a green apple and a black backpack"},
      {"a red bus parked on the side of a street",
       "a blue bus parked on the side of a street"},
      {"a cat sleeping on a wooden chair", "a dog sleeping on a wooden chair"},
      {"a man riding a horse on the beach",
       "a man riding a bicycle on the beach"},
      {"some plants surrounding a lightbulb",
       "some plants surrounding a candle"},
      {"a white plate with a slice of pizza",
       "a white plate with a slice of cake"},
      {"two zebras standing near a fire hydrant",
       "two giraffes standing near a fire hydrant"},
      {"a woman holding an umbrella in the rain",
       "a woman holding a surfboard in the rain"},
  };
  return kPairs;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("alignvq_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

GoldenSet write_golden_set(const fs::path& dir) {
  fs::create_directories(dir);
  GoldenSet set;
  set.dataset = dir / "dataset.jsonl";
  set.fixtures = dir / "fixtures.jsonl";

  MockBackend base{FixtureTable{}};
  FixtureTable table;
  const Vq2Config vq2;
  const VnliConfig vnli;
  std::ofstream dataset(set.dataset);

  const auto& pairs = caption_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string image_uri = "mock://golden/" + std::to_string(i) + ".png";
    const ImageRef image{image_uri, std::nullopt};
    const std::string source = i < pairs.size() / 2 ? "drawbench" : "coco_con";
    for (int label : {1, 0}) {
      const std::string& caption = label ? pairs[i].first : pairs[i].second;
      dataset << json{{"image", image_uri},
                      {"text", caption},
                      {"label", label},
                      {"original_dataset_id",
                       "golden_" + std::to_string(i) + (label ? "_pos" : "_neg")},
                      {"dataset_source", source}}
                     .dump()
              << '\n';
      ++set.pairs;

      table.add(requests::annotate(caption), json(base.annotate(caption)));
      const auto spans = extract_candidates(base, caption, vq2.span_cfg);
      for (const auto& span : spans) {
        const std::string q = base.generate_question(span.surface, caption);
        table.add(requests::generate_question(span.surface, caption), q);
        table.add(requests::answer_text_question(q, caption),
                  base.answer_text_question(q, caption));
      }
      const auto qa = build_qa_pairs(base, caption, spans, vq2.qg_cfg);
      for (std::size_t j = 0; j < qa.size(); ++j) {
        const double p = yes_probability(qa[j].answer.surface, pairs[i].first, j);
        table.add(requests::answer_visual_question(predicate_question(qa[j]), image),
                  json{{"answer", p >= 0.5 ? "yes" : "no"}, {"yes_probability", p}});
      }
      table.add(requests::vnli_yes_no(render_vnli_prompt(vnli, caption), image),
                label ? json::array({0.7, 0.2}) : json::array({0.25, 0.6}));
    }
  }
  table.save(set.fixtures);
  return set;
}

}  // namespace golden
