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


// Benchmark metrics: label binarization, rank-based ROC AUC, Winoground
// text/image/group scores, Fleiss-Kappa and per-model score comparison.

#ifndef ALIGNVQ_METRICS_HPP_
#define ALIGNVQ_METRICS_HPP_

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alignvq/types.hpp"

namespace alignvq {

/// Maps a source label to {0,1}. Entailment-like labels are 1; contradiction,
/// neutral and other non-alignment labels are 0. Throws Error(kBadLabel).
int binarize_label(std::string_view raw);

/// Mann-Whitney AUC with midranks; ties count 1/2 per positive-negative pair.
/// Throws Error(kShapeMismatch) on length mismatch, Error(kSingleClass) when
/// either class is absent, Error(kBadLabel) for labels outside {0,1}.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// s[c][i]: score of caption c against image i.
using ScoreMatrix = std::array<std::array<double, 2>, 2>;

struct WinogroundScores {
  double text_score = 0.0;
  double image_score = 0.0;
  double group_score = 0.0;
};

struct WinogroundOutcome {
  bool text = false;
  bool image = false;
  bool group = false;
};

/// Strict inequalities: ties count as incorrect.
WinogroundOutcome winoground_outcome(const ScoreMatrix& s);

/// Means over examples; an empty list scores 0 on all three.
WinogroundScores winoground_scores(const std::vector<ScoreMatrix>& matrices);

/// ratings[i][k]: raters who put item i in category k. Throws
/// Error(kShapeMismatch) when an item's counts do not sum to n_raters or rows
/// differ in width, Error(kDegenerateAgreement) when chance agreement is 1.
double fleiss_kappa(const std::vector<std::vector<int>>& ratings, int n_raters);

struct ModelSummary {
  std::string model_tag;
  std::size_t n = 0;
  double mean_score = 0.0;
  double human_mean = 0.0;
};

struct ModelComparison {
  std::vector<ModelSummary> models;  // sorted by model_tag
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Groups results by tag, regresses human means on mean scores by least
/// squares. R^2 is 0 when either side has zero variance. Models without a
/// human rating are ignored. Throws Error(kFewerThanTwoModels).
ModelComparison model_comparison(
    const std::vector<std::pair<std::string, AlignmentResult>>& results,
    const std::vector<std::pair<std::string, double>>& human);

}  // namespace alignvq

#endif  // ALIGNVQ_METRICS_HPP_
