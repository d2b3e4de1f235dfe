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


#include <algorithm>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "alignvq/congen.hpp"
#include "alignvq/mock_backend.hpp"
#include "alignvq/text.hpp"
#include "alignvq/vnli.hpp"
#include "alignvq/vq2.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace alignvq {
namespace {

using nlohmann::json;

const ImageRef kImage{"mock://scene", std::nullopt};

TextImagePair pair_for(const std::string& t) {
  return validate_pair({"", t, kImage, {}, {}});
}

std::shared_ptr<MockBackend> mock_with_default_yes(double p) {
  BackendConfig cfg;
  cfg.default_yes_probability = p;
  return std::make_shared<MockBackend>(FixtureTable{}, cfg);
}

TEST(Vq2Questions, Formats) {
  QAPair qa;
  qa.question = "what are the girls sitting on?";
  qa.answer = {"some grass", 25, 35, SpanKind::kNounPhrase};
  EXPECT_EQ(predicate_question(qa),
            "is some grass true for what are the girls sitting on? in this image?");
  EXPECT_EQ(equality_question("some grass", "grass"), "Is some grass == grass in this image?");
  EXPECT_EQ(qa_statement("what color?", "red"), "question: what color? answer: red");
  qa.answer.surface.clear();
  EXPECT_ALIGNVQ_ERROR(predicate_question(qa), kPrecondition);
}

TEST(Vq2, VariantCUsesPredicateYesProbability) {
  const std::string t = "two girls are sitting on some grass";
  auto base = std::make_shared<MockBackend>(FixtureTable{});
  const auto spans = extract_candidates(*base, t, SpanConfig{});
  const auto qa = build_qa_pairs(*base, t, spans, QgConfig{});
  ASSERT_GE(qa.size(), 2u);
  FixtureTable fx;
  std::vector<double> expected;
  for (std::size_t i = 0; i < qa.size(); ++i) {
    const double p = 0.1 + 0.2 * static_cast<double>(i);
    fx.add(requests::answer_visual_question(predicate_question(qa[i]), kImage), p);
    expected.push_back(p);
  }
  MockBackend m{fx};
  const auto r = vq2_score(m, pair_for(t), Vq2Config{});
  EXPECT_EQ(r.scorer_id, "vq2");
  EXPECT_EQ(r.status, ResultStatus::kOk);
  ASSERT_EQ(r.qa_breakdown.size(), qa.size());
  for (std::size_t i = 0; i < qa.size(); ++i) {
    EXPECT_DOUBLE_EQ(r.qa_breakdown[i].score, expected[i]);
    EXPECT_EQ(r.qa_breakdown[i].qa, qa[i]);
  }
  EXPECT_NEAR(r.score, static_cast<double>(oracle::mean(expected)), 1e-9);
}

TEST(Vq2, AllYesAndAllNo) {
  for (const std::string t : {"two girls are sitting on some grass",
                              "a black apple and a green backpack"}) {
    for (auto variant : {Vq2Variant::kC, Vq2Variant::kB}) {
      Vq2Config cfg;
      cfg.variant = variant;
      EXPECT_DOUBLE_EQ(vq2_score(*mock_with_default_yes(1.0), pair_for(t), cfg).score, 1.0);
    }
    EXPECT_DOUBLE_EQ(vq2_score(*mock_with_default_yes(0.0), pair_for(t), Vq2Config{}).score, 0.0);
  }
}

TEST(Vq2, VariantBAsksOpenQuestionThenEquality) {
  const std::string t = "a black apple and a green backpack";
  auto m = mock_with_default_yes(0.2);
  Vq2Config cfg;
  cfg.variant = Vq2Variant::kB;
  const auto r = vq2_score(*m, pair_for(t), cfg);
  EXPECT_EQ(r.scorer_id, "vq2b");
  for (const auto& a : r.qa_breakdown) {
    ASSERT_TRUE(a.vqa_answer.has_value());
    EXPECT_EQ(*a.vqa_answer, "unknown");
    EXPECT_EQ(a.predicate_question, equality_question(a.qa.answer.surface, "unknown"));
    EXPECT_DOUBLE_EQ(a.score, 0.2);
  }
}

TEST(Vq2, VariantAUsesNliEntailment) {
  const std::string t = "two girls are sitting on some grass";
  auto base = std::make_shared<MockBackend>(FixtureTable{});
  const auto qa = build_qa_pairs(*base, t, extract_candidates(*base, t, SpanConfig{}), QgConfig{});
  ASSERT_FALSE(qa.empty());
  FixtureTable fx;
  fx.add(requests::answer_visual_question(qa[0].question, kImage), "two");
  fx.add(requests::nli(qa_statement(qa[0].question, qa[0].answer.surface),
                       qa_statement(qa[0].question, "two")),
         json{{"entailment", 0.9}, {"neutral", 0.05}, {"contradiction", 0.05}});
  MockBackend m{fx};
  Vq2Config cfg;
  cfg.variant = Vq2Variant::kA;
  const auto r = vq2_score(m, pair_for(t), cfg);
  EXPECT_EQ(r.scorer_id, "vq2a");
  ASSERT_EQ(r.qa_breakdown.size(), qa.size());
  EXPECT_DOUBLE_EQ(r.qa_breakdown[0].score, 0.9);
  EXPECT_EQ(*r.qa_breakdown[0].vqa_answer, "two");
}

TEST(Vq2, VariantsShareTheQuestionSet) {
  const std::string t = "a man in a red shirt riding a bicycle";
  auto m = mock_with_default_yes(0.7);
  std::vector<std::vector<QAPair>> sets;
  for (auto v : {Vq2Variant::kA, Vq2Variant::kB, Vq2Variant::kC}) {
    Vq2Config cfg;
    cfg.variant = v;
    std::vector<QAPair> qa;
    for (const auto& a : vq2_score(*m, pair_for(t), cfg).qa_breakdown) qa.push_back(a.qa);
    sets.push_back(qa);
  }
  EXPECT_EQ(sets[0], sets[1]);
  EXPECT_EQ(sets[1], sets[2]);
}

TEST(Vq2, EmptyPolicies) {
  const std::string t = "two girls are sitting on some grass";
  Vq2Config cfg;
  cfg.qg_cfg.f1_threshold = 1.0;
  FixtureTable fx;
  MockBackend base{FixtureTable{}};
  for (const auto& s : extract_candidates(base, t, cfg.span_cfg)) {
    const auto q = base.generate_question(s.surface, t);
    fx.add(requests::answer_text_question(q, t), "");
  }
  MockBackend m{fx};
  const auto r = vq2_score(m, pair_for(t), cfg);
  EXPECT_EQ(r.status, ResultStatus::kNoQuestions);
  EXPECT_DOUBLE_EQ(r.score, 0.5);
  EXPECT_TRUE(r.qa_breakdown.empty());
  cfg.empty_policy = EmptyPolicy::kError;
  EXPECT_ALIGNVQ_ERROR(vq2_score(m, pair_for(t), cfg), kNoQuestions);
}

QAAlignment alignment(double score, std::size_t start, std::string surface) {
  QAAlignment a;
  a.score = score;
  a.qa.answer = {std::move(surface), start, start + 1, SpanKind::kOther};
  return a;
}

TEST(Localize, ArgminWithTieBreaking) {
  AlignmentResult r;
  r.pair_id = "p";
  r.qa_breakdown = {alignment(0.9, 0, "a"), alignment(0.2, 10, "b"), alignment(0.6, 5, "c")};
  EXPECT_EQ(localize_misalignment(r).qa.answer.surface, "b");
  r.qa_breakdown = {alignment(0.3, 8, "late"), alignment(0.3, 2, "early"), alignment(0.9, 0, "x")};
  EXPECT_EQ(localize_misalignment(r).qa.answer.surface, "early");
  r.qa_breakdown = {alignment(0.4, 3, "first"), alignment(0.4, 3, "second")};
  EXPECT_EQ(localize_misalignment(r).qa.answer.surface, "first");
  r.qa_breakdown.clear();
  EXPECT_ALIGNVQ_ERROR(localize_misalignment(r), kEmptyBreakdown);
}

TEST(Localize, PointsAtTheContradictedDetail) {
  const auto dir = golden::scratch_dir("localize");
  const auto set = golden::write_golden_set(dir);
  auto fixtures = FixtureTable::load(set.fixtures);
  MockBackend m{fixtures};
  const auto& pairs = golden::caption_pairs();
  // Pair 2: "a black apple and a green backpack" vs "a green apple and a black backpack".
  const ImageRef img{"mock://golden/2.png", std::nullopt};
  const auto r = vq2_score(m, validate_pair({"", pairs[2].second, img, {}, {}}), Vq2Config{});
  const auto worst = localize_misalignment(r);
  EXPECT_LT(worst.score, 0.5);
  EXPECT_NE(worst.qa.answer.surface.find("green apple"), std::string::npos)
      << worst.qa.answer.surface;
}

TEST(Vq2Config, JsonRoundTripAndParsing) {
  Vq2Config cfg;
  cfg.variant = Vq2Variant::kB;
  cfg.span_cfg.max_candidates = 5;
  cfg.qg_cfg.f1_threshold = 0.7;
  cfg.empty_policy = EmptyPolicy::kError;
  const auto back = json(cfg).get<Vq2Config>();
  EXPECT_EQ(back.variant, Vq2Variant::kB);
  EXPECT_EQ(back.span_cfg.max_candidates, 5);
  EXPECT_DOUBLE_EQ(back.qg_cfg.f1_threshold, 0.7);
  EXPECT_EQ(back.empty_policy, EmptyPolicy::kError);
  EXPECT_ALIGNVQ_ERROR(parse_variant("D"), kInvalidConfig);
  EXPECT_EQ(Vq2Config{}.variant, Vq2Variant::kC);
}

TEST(Vq2Scorer, DigestTracksConfigAndBackend) {
  auto a = std::make_shared<MockBackend>(FixtureTable{});
  auto b = mock_with_default_yes(0.9);
  Vq2Config c;
  Vq2Config other;
  other.qg_cfg.f1_threshold = 0.6;
  EXPECT_EQ(Vq2Scorer(a, c).config_digest(), Vq2Scorer(a, c).config_digest());
  EXPECT_NE(Vq2Scorer(a, c).config_digest(), Vq2Scorer(a, other).config_digest());
  EXPECT_NE(Vq2Scorer(a, c).config_digest(), Vq2Scorer(b, c).config_digest());
}

TEST(Vnli, RatioScoring) {
  FixtureTable fx;
  const VnliConfig cfg;
  auto add = [&](const std::string& t, double y, double n) {
    fx.add(requests::vnli_yes_no(render_vnli_prompt(cfg, t), kImage), json::array({y, n}));
  };
  add("a", 0.8, 0.2);
  add("b", 0.0, 0.0);
  add("c", 0.8, 0.1);
  MockBackend m{fx};
  EXPECT_DOUBLE_EQ(vnli_score(m, pair_for("a"), cfg).score, 0.8);
  EXPECT_DOUBLE_EQ(vnli_score(m, pair_for("unlisted"), cfg).score, 0.5);
  EXPECT_NEAR(vnli_score(m, pair_for("c"), cfg).score, 0.8 / 0.9, 1e-12);
  EXPECT_TRUE(vnli_score(m, pair_for("a"), cfg).qa_breakdown.empty());
  EXPECT_ALIGNVQ_ERROR(vnli_score(m, pair_for("b"), cfg), kDegenerateProbabilities);
}

TEST(Vnli, PromptTemplate) {
  VnliConfig cfg;
  EXPECT_EQ(render_vnli_prompt(cfg, "a dog"), "Does this image entail the description: a dog?");
  cfg.prompt_template = "no placeholder";
  EXPECT_ALIGNVQ_ERROR(cfg.validate(), kInvalidConfig);
  cfg.prompt_template = "{text} and {text}";
  EXPECT_ALIGNVQ_ERROR(cfg.validate(), kInvalidConfig);
}

TEST(Vnli, ScalingInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = u(rng), n = u(rng);
    const double k = u(rng) / std::max(y, n);
    EXPECT_NEAR(yes_ratio({y, n}), yes_ratio({k * y, k * n}), 1e-12);
  }
}

TEST(Ensemble, MeanIdempotenceCommutativity) {
  const AlignmentResult a{"p", "vq2", 0.9, {}, ResultStatus::kOk};
  const AlignmentResult b{"p", "vnli", 0.7, {}, ResultStatus::kOk};
  const auto ab = ensemble_score(a, b);
  EXPECT_NEAR(ab.score, 0.8, 1e-12);
  EXPECT_EQ(ab.scorer_id, "avg(vq2,vnli)");
  EXPECT_DOUBLE_EQ(ensemble_score(b, a).score, ab.score);
  EXPECT_DOUBLE_EQ(ensemble_score(a, a).score, 0.9);
  AlignmentResult c = b;
  c.pair_id = "q";
  EXPECT_ALIGNVQ_ERROR(ensemble_score(a, c), kPairMismatch);
}

TEST(Ensemble, ScorerCombinesVq2AndVnli) {
  auto m = mock_with_default_yes(1.0);
  auto vq2 = std::make_shared<Vq2Scorer>(m, Vq2Config{});
  auto vnli = std::make_shared<VnliScorer>(m, VnliConfig{});
  EnsembleScorer e(vq2, vnli);
  const auto r = e.score(pair_for("two girls are sitting on some grass"));
  EXPECT_EQ(e.scorer_id(), "avg(vq2,vnli)");
  EXPECT_DOUBLE_EQ(r.score, 0.75);
}

// ---- ConGen ----------------------------------------------------------------

TEST(ConGen, DefaultExemplarsAndPrompt) {
  const auto& ex = default_exemplars();
  ASSERT_EQ(ex.size(), 15u);
  EXPECT_EQ(std::count_if(ex.begin(), ex.end(),
                          [](const Exemplar& e) { return e.polarity == Polarity::kPositive; }),
            7);
  const ConGenConfig cfg;
  const auto p1 = render_congen_prompt("a cat on a mat", cfg);
  EXPECT_EQ(p1, render_congen_prompt("a cat on a mat", cfg));
  EXPECT_EQ(count_prompt_exemplars(p1), 15u);
  EXPECT_EQ(p1.rfind("a cat on a mat"), p1.size() - std::string("a cat on a mat\nGood rewrite:").size());
  EXPECT_ALIGNVQ_ERROR(render_congen_prompt("  ", cfg), kEmptyText);
}

TEST(ConGen, KnifeBecomesSpoon) {
  const std::string caption = "a knife sitting next to carrots on top of a cutting board";
  const std::string spoon = "a spoon sitting next to carrots on top of a cutting board";
  const std::string fork = "a fork sitting next to carrots on top of a cutting board";
  const ConGenConfig cfg;
  FixtureTable fx;
  fx.add(requests::complete_text(render_congen_prompt(caption, cfg), cfg.n_candidates),
         json::array({fork, spoon, caption, " " + spoon + " "}));
  fx.add(requests::nli(caption, spoon), json{{"entailment", 0.02}, {"neutral", 0.03}, {"contradiction", 0.95}});
  fx.add(requests::nli(caption, fork), json{{"entailment", 0.1}, {"neutral", 0.2}, {"contradiction", 0.7}});
  MockBackend m{fx};
  const auto out = generate_contradiction(m, caption, cfg);
  EXPECT_EQ(out.chosen, spoon);
  EXPECT_DOUBLE_EQ(out.selection_score, 0.95);
  ASSERT_EQ(out.candidates.size(), 2u);
  EXPECT_EQ(json(out).get<ConGenOutput>(), out);
}

TEST(ConGen, CleaningAndErrors) {
  EXPECT_EQ(clean_candidates("A dog", {"a dog", " A DOG ", "", "a cat", "A Cat", "a cow"}),
            (std::vector<std::string>{"a cat", "a cow"}));
  const std::string caption = "a dog";
  const ConGenConfig cfg;
  FixtureTable fx;
  fx.add(requests::complete_text(render_congen_prompt(caption, cfg), cfg.n_candidates),
         json::array({"a dog", "A dog", "  "}));
  MockBackend m{fx};
  EXPECT_ALIGNVQ_ERROR(generate_contradiction(m, caption, cfg), kNoValidCandidates);
  MockBackend silent{FixtureTable{}};
  EXPECT_ALIGNVQ_ERROR(generate_contradiction(silent, caption, cfg), kNoValidCandidates);
}

TEST(ConGen, SelectionRules) {
  auto cand = [](double e, double n, double c) { return ScoredCandidate{"x", {e, n, c}}; };
  const std::vector<ScoredCandidate> three = {cand(0.5, 0.3, 0.2), cand(0.05, 0.05, 0.9),
                                              cand(0.02, 0.08, 0.9)};
  EXPECT_EQ(select_candidate(three, Selection::kMaxContradiction), 1u);
  EXPECT_EQ(select_candidate(three, Selection::kMinEntailment), 2u);
  EXPECT_ALIGNVQ_ERROR(select_candidate({}, Selection::kMaxContradiction), kNoValidCandidates);
}

TEST(ConGen, SelectionsAgreeWithConstantNeutral) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double neutral = 0.3 * u(rng);
    std::vector<ScoredCandidate> c;
    for (int i = 0; i < 6; ++i) {
      const double contra = (1.0 - neutral) * u(rng);
      c.push_back({"c" + std::to_string(i), {1.0 - neutral - contra, neutral, contra}});
    }
    EXPECT_EQ(select_candidate(c, Selection::kMaxContradiction),
              select_candidate(c, Selection::kMinEntailment));
  }
}

TEST(ConGen, ConfigAndExemplarFile) {
  ConGenConfig cfg;
  cfg.n_candidates = 0;
  EXPECT_ALIGNVQ_ERROR(cfg.validate(), kInvalidConfig);
  cfg.n_candidates = 1;
  cfg.exemplars.clear();
  EXPECT_ALIGNVQ_ERROR(cfg.validate(), kInvalidConfig);
  const auto dir = golden::scratch_dir("exemplars");
  std::ofstream(dir / "ex.json")
      << R"([{"caption":"a red car","rewrite":"a blue car","polarity":"positive"},
             {"caption":"a red car","rewrite":"a red automobile","polarity":"negative"}])";
  cfg.exemplars = load_exemplars(dir / "ex.json");
  ASSERT_EQ(cfg.exemplars.size(), 2u);
  EXPECT_EQ(cfg.exemplars[1].polarity, Polarity::kNegative);
  EXPECT_EQ(count_prompt_exemplars(render_congen_prompt("x", cfg)), 2u);
  EXPECT_EQ(parse_selection("min_entailment"), Selection::kMinEntailment);
  EXPECT_ALIGNVQ_ERROR(parse_selection("max"), kInvalidConfig);
}

}  // namespace
}  // namespace alignvq
