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


#include "alignvq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "alignvq/error.hpp"
#include "alignvq/text.hpp"

namespace alignvq {

int binarize_label(std::string_view raw) {
  const std::string v = text::to_lower(text::trim(raw));
  static const std::array<std::string_view, 5> kPositive = {
      "entailment", "aligned", "1", "yes", "true"};
  static const std::array<std::string_view, 7> kNegative = {
      "contradiction", "neutral", "unaligned", "misaligned", "0", "no",
      "false"};
  if (std::find(kPositive.begin(), kPositive.end(), v) != kPositive.end()) {
    return 1;
  }
  if (std::find(kNegative.begin(), kNegative.end(), v) != kNegative.end()) {
    return 0;
  }
  throw Error(ErrorCode::kBadLabel,
              "cannot binarize label '" + std::string(raw) + "'");
}

double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      const int label = labels[order[k]];
      if (label != 0 && label != 1) {
        throw Error(ErrorCode::kBadLabel, "labels must be 0 or 1");
      }
      if (label == 1) {
        positive_rank_sum += midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::kSingleClass,
                "ROC AUC needs both positive and negative labels");
  }
  const double p = static_cast<double>(n_pos);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

WinogroundOutcome winoground_outcome(const ScoreMatrix& s) {
  WinogroundOutcome o;
  o.text = s[0][0] > s[1][0] && s[1][1] > s[0][1];
  o.image = s[0][0] > s[0][1] && s[1][1] > s[1][0];
  o.group = o.text && o.image;
  return o;
}

WinogroundScores winoground_scores(const std::vector<ScoreMatrix>& matrices) {
  WinogroundScores out;
  if (matrices.empty()) return out;
  std::size_t text = 0, image = 0, group = 0;
  for (const auto& m : matrices) {
    const auto o = winoground_outcome(m);
    text += o.text;
    image += o.image;
    group += o.group;
  }
  const double n = static_cast<double>(matrices.size());
  out.text_score = static_cast<double>(text) / n;
  out.image_score = static_cast<double>(image) / n;
  out.group_score = static_cast<double>(group) / n;
  return out;
}

double fleiss_kappa(const std::vector<std::vector<int>>& ratings,
                    int n_raters) {
  if (n_raters < 2) {
    throw Error(ErrorCode::kPrecondition, "Fleiss-Kappa needs >= 2 raters");
  }
  if (ratings.empty()) {
    throw Error(ErrorCode::kPrecondition, "Fleiss-Kappa needs >= 1 item");
  }
  const std::size_t k = ratings.front().size();
  std::vector<double> category_totals(k, 0.0);
  double p_bar = 0.0;
  const double n = n_raters;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const auto& row = ratings[i];
    if (row.size() != k) {
      throw Error(ErrorCode::kShapeMismatch,
                  "item " + std::to_string(i) + " has a different category count");
    }
    int sum = 0;
    double agree = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (row[c] < 0) {
        throw Error(ErrorCode::kShapeMismatch, "negative rating count");
      }
      sum += row[c];
      agree += static_cast<double>(row[c]) * (row[c] - 1);
      category_totals[c] += row[c];
    }
    if (sum != n_raters) {
      throw Error(ErrorCode::kShapeMismatch,
                  "item " + std::to_string(i) + " has " + std::to_string(sum) +
                      " ratings, expected " + std::to_string(n_raters));
    }
    p_bar += agree / (n * (n - 1.0));
  }
  const double items = static_cast<double>(ratings.size());
  p_bar /= items;
  double p_e = 0.0;
  for (double t : category_totals) {
    const double pj = t / (items * n);
    p_e += pj * pj;
  }
  if (std::abs(1.0 - p_e) < 1e-12) {
    throw Error(ErrorCode::kDegenerateAgreement,
                "chance agreement is 1; kappa undefined");
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

ModelComparison model_comparison(
    const std::vector<std::pair<std::string, AlignmentResult>>& results,
    const std::vector<std::pair<std::string, double>>& human) {
  std::map<std::string, double> human_by_tag(human.begin(), human.end());
  std::map<std::string, std::pair<std::size_t, double>> grouped;
  for (const auto& [tag, result] : results) {
    auto& g = grouped[tag];
    ++g.first;
    g.second += result.score;
  }
  ModelComparison out;
  for (const auto& [tag, g] : grouped) {
    const auto h = human_by_tag.find(tag);
    if (h == human_by_tag.end()) continue;
    out.models.push_back(
        {tag, g.first, g.second / static_cast<double>(g.first), h->second});
  }
  if (out.models.size() < 2) {
    throw Error(ErrorCode::kFewerThanTwoModels,
                "model comparison needs at least two models with human ratings");
  }
  const double m = static_cast<double>(out.models.size());
  double mx = 0.0, my = 0.0;
  for (const auto& s : out.models) {
    mx += s.mean_score;
    my += s.human_mean;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& s : out.models) {
    const double dx = s.mean_score - mx;
    const double dy = s.human_mean - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    out.slope = 0.0;
    out.intercept = my;
    out.r_squared = 0.0;
    return out;
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r_squared = std::clamp((sxy * sxy) / (sxx * syy), 0.0, 1.0);
  return out;
}

}  // namespace alignvq
