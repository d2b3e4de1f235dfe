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


#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "alignvq/error.hpp"
#include "alignvq/metrics.hpp"
#include "alignvq/rerank.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace alignvq {
namespace {

TEST(BinarizeLabel, KnownLabels) {
  for (const char* l : {"entailment", "Entailment", "aligned", "1", "yes", " true "}) {
    EXPECT_EQ(binarize_label(l), 1) << l;
  }
  for (const char* l : {"contradiction", "neutral", "unaligned", "misaligned", "0", "no", "false"}) {
    EXPECT_EQ(binarize_label(l), 0) << l;
  }
  EXPECT_ALIGNVQ_ERROR(binarize_label("maybe"), kBadLabel);
  EXPECT_ALIGNVQ_ERROR(binarize_label(""), kBadLabel);
}

TEST(RocAuc, HandComputed) {
  EXPECT_DOUBLE_EQ(roc_auc({0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1}), 0.75);
  EXPECT_DOUBLE_EQ(roc_auc({0.9, 0.1}, {1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc({0.1, 0.9}, {1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(roc_auc({0.5, 0.5, 0.5}, {1, 0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(roc_auc({0.2, 0.5, 0.5, 0.7}, {0, 1, 0, 1}), 0.875);
}

TEST(RocAuc, Errors) {
  EXPECT_ALIGNVQ_ERROR(roc_auc({0.1}, {0, 1}), kShapeMismatch);
  EXPECT_ALIGNVQ_ERROR(roc_auc({0.1, 0.2}, {1, 1}), kSingleClass);
  EXPECT_ALIGNVQ_ERROR(roc_auc({}, {}), kSingleClass);
  EXPECT_ALIGNVQ_ERROR(roc_auc({0.1, 0.2}, {1, 2}), kBadLabel);
}

TEST(RocAuc, MatchesPairCountingWithTies) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 7) / 7.0;
      y[i] = static_cast<int>(rng() % 2);
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(roc_auc(s, y), oracle::auc_pairs(s, y), 1e-9);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(3.0 * s[i]) - 2.0;
    EXPECT_NEAR(roc_auc(t, y), roc_auc(s, y), 1e-12);
  }
}

TEST(Winoground, Outcomes) {
  const ScoreMatrix perfect{{{0.9, 0.1}, {0.2, 0.8}}};
  const auto o = winoground_outcome(perfect);
  EXPECT_TRUE(o.text && o.image && o.group);
  // Both images pick the right caption, but caption 0 prefers image 1.
  const ScoreMatrix image_fail{{{0.9, 0.95}, {0.2, 0.99}}};
  const auto t = winoground_outcome(image_fail);
  EXPECT_TRUE(t.text);
  EXPECT_FALSE(t.image);
  EXPECT_FALSE(t.group);
  const ScoreMatrix ties{{{0.5, 0.5}, {0.5, 0.5}}};
  const auto z = winoground_outcome(ties);
  EXPECT_FALSE(z.text || z.image || z.group);
}

TEST(Winoground, Aggregates) {
  const auto empty = winoground_scores({});
  EXPECT_EQ(empty.text_score, 0.0);
  EXPECT_EQ(empty.group_score, 0.0);
  const ScoreMatrix good{{{0.9, 0.1}, {0.2, 0.8}}};
  const ScoreMatrix bad{{{0.1, 0.9}, {0.8, 0.2}}};
  const auto s = winoground_scores({good, bad, good, good});
  EXPECT_DOUBLE_EQ(s.text_score, 0.75);
  EXPECT_DOUBLE_EQ(s.image_score, 0.75);
  EXPECT_DOUBLE_EQ(s.group_score, 0.75);
}

TEST(FleissKappa, KnownValues) {
  EXPECT_NEAR(fleiss_kappa({{3, 0}, {0, 3}, {3, 0}, {0, 3}}, 3), 1.0, 1e-12);
  EXPECT_NEAR(fleiss_kappa({{2, 1}, {1, 2}}, 3), -1.0 / 3.0, 1e-12);
  // Standard worked example: 10 items, 14 raters, 5 categories.
  const std::vector<std::vector<int>> wiki = {
      {0, 0, 0, 0, 14}, {0, 2, 6, 4, 2}, {0, 0, 3, 5, 6}, {0, 3, 9, 2, 0},
      {2, 2, 8, 1, 1},  {7, 7, 0, 0, 0}, {3, 2, 6, 3, 0}, {2, 5, 3, 2, 2},
      {6, 5, 2, 1, 0},  {0, 2, 2, 3, 7}};
  EXPECT_NEAR(fleiss_kappa(wiki, 14), 0.209930, 1e-6);
  EXPECT_NEAR(fleiss_kappa(wiki, 14), oracle::fleiss_kappa(wiki, 14), 1e-12);
}

TEST(FleissKappa, Errors) {
  EXPECT_ALIGNVQ_ERROR(fleiss_kappa({{2, 0}, {1, 2}}, 3), kShapeMismatch);
  EXPECT_ALIGNVQ_ERROR(fleiss_kappa({{3, 0}, {3, 0}}, 3), kDegenerateAgreement);
  EXPECT_ALIGNVQ_ERROR(fleiss_kappa({{3, 0}}, 1), kPrecondition);
}

TEST(FleissKappa, RandomAgainstOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const std::size_t items = 2 + rng() % 20;
    std::vector<std::vector<int>> r(items, std::vector<int>(3, 0));
    for (auto& row : r) {
      for (int k = 0; k < n; ++k) ++row[rng() % 3];
    }
    double got = 0.0;
    try {
      got = fleiss_kappa(r, n);
    } catch (const Error&) {
      continue;
    }
    EXPECT_NEAR(got, oracle::fleiss_kappa(r, n), 1e-9);
  }
}

AlignmentResult result(double score) {
  AlignmentResult r;
  r.pair_id = "p";
  r.scorer_id = "s";
  r.score = score;
  return r;
}

TEST(ModelComparison, PerfectLine) {
  const auto c = model_comparison(
      {{"b", result(0.6)}, {"a", result(0.2)}, {"a", result(0.4)}, {"b", result(0.8)},
       {"orphan", result(0.5)}},
      {{"a", 3.0}, {"b", 4.4}});
  ASSERT_EQ(c.models.size(), 2u);
  EXPECT_EQ(c.models[0].model_tag, "a");
  EXPECT_EQ(c.models[0].n, 2u);
  EXPECT_NEAR(c.models[0].mean_score, 0.3, 1e-12);
  EXPECT_NEAR(c.slope, 1.4 / 0.4, 1e-9);
  EXPECT_NEAR(c.intercept, 3.0 - 3.5 * 0.3, 1e-9);
  EXPECT_NEAR(c.r_squared, 1.0, 1e-12);
}

TEST(ModelComparison, ThreeModelsAndDegenerate) {
  const auto c = model_comparison({{"a", result(0.0)}, {"b", result(1.0)}, {"c", result(2.0)}},
                                  {{"a", 1.0}, {"b", 3.0}, {"c", 2.0}});
  EXPECT_NEAR(c.slope, 0.5, 1e-12);
  EXPECT_NEAR(c.intercept, 1.5, 1e-12);
  EXPECT_NEAR(c.r_squared, 0.25, 1e-12);
  const auto flat = model_comparison({{"a", result(0.5)}, {"b", result(0.5)}},
                                     {{"a", 1.0}, {"b", 3.0}});
  EXPECT_EQ(flat.r_squared, 0.0);
  EXPECT_ALIGNVQ_ERROR(model_comparison({{"a", result(0.5)}}, {{"a", 1.0}}),
                       kFewerThanTwoModels);
}

class TableScorer : public AlignmentScorer {
 public:
  explicit TableScorer(std::map<std::string, double> by_uri) : by_uri_(std::move(by_uri)) {}
  std::string scorer_id() const override { return "table"; }
  std::string config_digest() const override { return "t"; }
  AlignmentResult score(const TextImagePair& pair) override {
    AlignmentResult r;
    r.pair_id = pair.pair_id;
    r.scorer_id = "table";
    r.score = by_uri_.at(pair.image.uri);
    return r;
  }

 private:
  std::map<std::string, double> by_uri_;
};

TEST(Rerank, StableDescendingOrder) {
  EXPECT_EQ(rank_order({0.2, 0.9, 0.5, 0.9}), (std::vector<std::size_t>{1, 3, 2, 0}));
  EXPECT_TRUE(rank_order({}).empty());
}

TEST(Rerank, RanksCandidates) {
  TableScorer s({{"mock://a", 0.1}, {"mock://b", 0.7}, {"mock://c", 0.4}});
  const std::vector<ImageRef> imgs = {{"mock://a", {}}, {"mock://b", {}}, {"mock://c", {}}};
  const auto ranked = rank_candidates("a prompt", imgs, s, 2);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].index, 1u);
  EXPECT_EQ(ranked[0].image.uri, "mock://b");
  EXPECT_EQ(ranked[2].index, 0u);
  EXPECT_DOUBLE_EQ(top1_quality({ranked}, {{0, 1, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(top1_quality({ranked, ranked}, {{0, 1, 0}, {1, 0, 1}}), 0.5);
  EXPECT_ALIGNVQ_ERROR(rank_candidates("a prompt", {}, s), kPrecondition);
  EXPECT_ALIGNVQ_ERROR(rank_candidates("  ", imgs, s), kEmptyText);
}

}  // namespace
}  // namespace alignvq
