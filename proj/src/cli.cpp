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


#include "alignvq/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "alignvq/backend.hpp"
#include "alignvq/cache.hpp"
#include "alignvq/congen.hpp"
#include "alignvq/dataset_io.hpp"
#include "alignvq/error.hpp"
#include "alignvq/parallel.hpp"
#include "alignvq/rerank.hpp"
#include "alignvq/vnli.hpp"
#include "alignvq/vq2.hpp"

namespace alignvq {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kModelScorers = {"vq2", "vnli", "ensemble"};
const std::vector<std::string> kAllScorers = {"vq2",    "vnli",        "ensemble",
                                              "oracle", "anti-oracle", "random"};

bool is_model_scorer(const std::string& name) {
  return std::find(kModelScorers.begin(), kModelScorers.end(), name) !=
         kModelScorers.end();
}

struct GlobalOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> fixtures;
  std::optional<std::string> endpoint;
  std::optional<double> timeout_s;
  std::optional<int> max_in_flight;
  std::optional<std::size_t> parallel;
  std::optional<std::string> cache_dir;
  std::optional<std::string> variant;
  std::optional<double> f1_threshold;
  bool stats = false;
};

AppConfig resolve_config(const GlobalOptions& g, const EnvLookup& env) {
  AppConfig cfg = load_config(g.config_path, env);
  if (g.fixtures) cfg.backend.fixture_path = *g.fixtures;
  if (g.endpoint) cfg.backend.endpoint = *g.endpoint;
  if (g.timeout_s) cfg.backend.timeout_s = *g.timeout_s;
  if (g.max_in_flight) cfg.backend.max_in_flight = *g.max_in_flight;
  if (g.parallel) cfg.parallel = *g.parallel;
  if (g.cache_dir) cfg.cache_dir = *g.cache_dir;
  if (g.variant) cfg.vq2.variant = parse_variant(*g.variant);
  if (g.f1_threshold) cfg.vq2.qg_cfg.f1_threshold = *g.f1_threshold;
  cfg.validate();
  return cfg;
}

// Owns the backend and scorers for one command run. The backend is built on
// first use, so label-driven scorers never need model configuration.
class Session {
 public:
  Session(AppConfig cfg, std::ostream& err, bool stats)
      : cfg_(std::move(cfg)), err_(err), stats_(stats) {}

  ~Session() {
    if (!stats_) return;
    err_ << "backend_calls: " << (backend_ ? backend_->calls() : 0) << '\n';
    if (cached_) {
      err_ << "cache_hits: " << cached_->hits() << '\n'
           << "cache_misses: " << cached_->misses() << '\n';
    }
  }

  const AppConfig& config() const { return cfg_; }

  std::shared_ptr<CountingBackend> backend() {
    if (!backend_) {
      backend_ = std::make_shared<CountingBackend>(make_backend(cfg_.backend));
    }
    return backend_;
  }

  std::shared_ptr<AlignmentScorer> scorer(const std::string& name,
                                          std::size_t inner_parallel) {
    std::shared_ptr<AlignmentScorer> s;
    if (name == "vq2") {
      s = std::make_shared<Vq2Scorer>(backend(), cfg_.vq2, inner_parallel);
    } else if (name == "vnli") {
      s = std::make_shared<VnliScorer>(backend(), cfg_.vnli);
    } else if (name == "ensemble") {
      s = std::make_shared<EnsembleScorer>(
          std::make_shared<Vq2Scorer>(backend(), cfg_.vq2, inner_parallel),
          std::make_shared<VnliScorer>(backend(), cfg_.vnli));
    } else {
      throw UsageError("scorer '" + name + "' needs labels and is not available here");
    }
    if (cfg_.cache_dir) {
      cached_ = std::make_shared<CachedScorer>(
          std::move(s), std::make_shared<ScoreCache>(*cfg_.cache_dir));
      return cached_;
    }
    return s;
  }

 private:
  AppConfig cfg_;
  std::ostream& err_;
  bool stats_;
  std::shared_ptr<CountingBackend> backend_;
  std::shared_ptr<CachedScorer> cached_;
};

// Local images are checked up front so a missing file fails the same way
// regardless of how far the pipeline gets before touching the image.
TextImagePair checked_pair(std::string text, const ImageRef& image,
                        std::optional<int> label = std::nullopt,
                        std::optional<std::string> source = std::nullopt) {
  if (!image.uri.empty() && is_local_path(image.uri)) {
    std::error_code ec;
    if (!fs::is_regular_file(canonical_uri(image.uri), ec)) {
      throw Error(ErrorCode::kImageUnreadable,
                  "image file '" + image.uri + "' does not exist");
    }
  }
  TextImagePair pair;
  pair.text = std::move(text);
  pair.image = image;
  pair.label = label;
  pair.source = std::move(source);
  return validate_pair(std::move(pair));
}

AlignmentResult label_result(const TextImagePair& pair, std::string scorer_id,
                             double score) {
  AlignmentResult r;
  r.pair_id = pair.pair_id;
  r.scorer_id = std::move(scorer_id);
  r.score = score;
  r.status = ResultStatus::kOk;
  return r;
}

// Scores from labels: oracle = label, anti-oracle = 1 - label, random =
// uniform draws in input order from a seeded generator.
std::vector<double> label_scores(const std::string& name,
                                 const std::vector<int>& labels,
                                 std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(labels.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int label : labels) {
    if (name == "oracle") {
      out.push_back(label);
    } else if (name == "anti-oracle") {
      out.push_back(1.0 - label);
    } else {
      out.push_back(uniform(rng));
    }
  }
  return out;
}

void emit(const std::optional<std::string>& path, std::ostream& out,
          const std::string& data) {
  if (path) {
    write_file_atomic(*path, data);
  } else {
    out << data;
  }
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// ---- score ---------------------------------------------------------------

struct ScoreArgs {
  std::string text;
  std::string image;
  std::string scorer = "vq2";
};

int cmd_score(Session& session, const ScoreArgs& a, std::ostream& out) {
  const auto pair = checked_pair(a.text, ImageRef{a.image, std::nullopt});
  auto scorer = session.scorer(a.scorer, session.config().parallel);
  out << json(scorer->score(pair)).dump(2) << '\n';
  return kExitOk;
}

// ---- evaluate ------------------------------------------------------------

struct EvalArgs {
  std::string dataset;
  std::string scorer = "vq2";
  std::optional<std::string> out;
  std::optional<std::string> results;
  std::uint64_t seed = 0;
};

int cmd_evaluate(Session& session, const EvalArgs& a, std::ostream& out) {
  const auto records = load_seetrue(a.dataset);
  std::vector<TextImagePair> pairs;
  pairs.reserve(records.size());
  for (const auto& r : records) {
    pairs.push_back(checked_pair(r.text, r.image, r.label, r.dataset_source));
  }
  std::vector<AlignmentResult> results;
  if (is_model_scorer(a.scorer)) {
    auto scorer = session.scorer(a.scorer, 1);
    results = parallel_map(pairs.size(), session.config().parallel,
                           [&](std::size_t i) { return scorer->score(pairs[i]); });
  } else {
    std::vector<int> labels;
    for (const auto& r : records) labels.push_back(r.label);
    const auto scores = label_scores(a.scorer, labels, a.seed);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      results.push_back(label_result(pairs[i], a.scorer, scores[i]));
    }
  }
  std::vector<double> scores;
  for (const auto& r : results) scores.push_back(r.score);

  std::ostringstream csv;
  write_eval_csv(csv, evaluate_by_source(records, scores));
  emit(a.out, out, csv.str());
  if (a.results) {
    std::ostringstream jsonl;
    write_results_jsonl(jsonl, results);
    write_file_atomic(*a.results, jsonl.str());
  }
  return kExitOk;
}

// ---- winoground ----------------------------------------------------------

struct WinoArgs {
  std::optional<std::string> dataset;
  std::optional<std::size_t> synthetic;
  std::string scorer = "vq2";
  std::uint64_t seed = 0;
};

std::vector<WinogroundExample> synthetic_winoground(std::size_t n) {
  std::vector<WinogroundExample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].example_id = std::to_string(i);
    out[i].captions = {fmt::format("synthetic caption {} a", i),
                       fmt::format("synthetic caption {} b", i)};
    out[i].images = {ImageRef{fmt::format("mock://winoground/{}/0", i), {}},
                     ImageRef{fmt::format("mock://winoground/{}/1", i), {}}};
  }
  return out;
}

int cmd_winoground(Session& session, const WinoArgs& a, std::ostream& out) {
  if (a.dataset.has_value() == a.synthetic.has_value()) {
    throw UsageError("winoground needs exactly one of --dataset or --synthetic");
  }
  const auto examples =
      a.dataset ? load_winoground(*a.dataset) : synthetic_winoground(*a.synthetic);
  std::vector<ScoreMatrix> matrices(examples.size());
  if (is_model_scorer(a.scorer)) {
    auto scorer = session.scorer(a.scorer, 1);
    const auto flat = parallel_map(
        examples.size() * 4, session.config().parallel, [&](std::size_t k) {
          const auto& ex = examples[k / 4];
          const std::size_t c = (k % 4) / 2, i = k % 2;
          return scorer->score(checked_pair(ex.captions[c], ex.images[i])).score;
        });
    for (std::size_t k = 0; k < flat.size(); ++k) {
      matrices[k / 4][(k % 4) / 2][k % 2] = flat[k];
    }
  } else {
    // Diagonal entries are the matching pairs.
    std::vector<int> labels;
    labels.reserve(examples.size() * 4);
    for (std::size_t e = 0; e < examples.size(); ++e) {
      labels.insert(labels.end(), {1, 0, 0, 1});
    }
    const auto flat = label_scores(a.scorer, labels, a.seed);
    for (std::size_t k = 0; k < flat.size(); ++k) {
      matrices[k / 4][(k % 4) / 2][k % 2] = flat[k];
    }
  }
  const auto s = winoground_scores(matrices);
  out << fmt::format("examples: {}\ntext_score: {:.2f}\nimage_score: {:.2f}\n"
                     "group_score: {:.2f}\n",
                     examples.size(), 100.0 * s.text_score,
                     100.0 * s.image_score, 100.0 * s.group_score);
  return kExitOk;
}

// ---- rank ----------------------------------------------------------------

struct RankArgs {
  std::string groups;
  std::string scorer = "vq2";
  std::optional<std::string> out;
  std::uint64_t seed = 0;
};

int cmd_rank(Session& session, const RankArgs& a, std::ostream& out,
             std::ostream& err) {
  const auto groups = load_prompt_groups(a.groups);
  const bool model = is_model_scorer(a.scorer);
  bool all_labeled = !groups.empty();
  for (const auto& g : groups) all_labeled = all_labeled && !g.labels.empty();
  if (!model && !all_labeled) {
    throw UsageError("scorer '" + a.scorer + "' needs labels on every prompt group");
  }
  std::shared_ptr<AlignmentScorer> scorer;
  if (model) scorer = session.scorer(a.scorer, session.config().parallel);

  std::vector<std::vector<RankedCandidate>> ranked;
  std::uint64_t seed = a.seed;
  for (const auto& g : groups) {
    if (model) {
      for (const auto& img : g.images) checked_pair(g.prompt, img);
      ranked.push_back(
          rank_candidates(g.prompt, g.images, *scorer, session.config().parallel));
    } else {
      const auto scores = label_scores(a.scorer, g.labels, seed++);
      std::vector<RankedCandidate> r;
      for (std::size_t i : rank_order(scores)) r.push_back({i, g.images[i], scores[i]});
      ranked.push_back(std::move(r));
    }
  }
  std::ostringstream jsonl;
  for (std::size_t p = 0; p < groups.size(); ++p) {
    json items = json::array();
    for (const auto& c : ranked[p]) {
      items.push_back(json{{"index", c.index}, {"image", c.image}, {"score", c.score}});
    }
    jsonl << json{{"prompt", groups[p].prompt}, {"ranked", items}}.dump() << '\n';
  }
  emit(a.out, out, jsonl.str());
  if (all_labeled) {
    std::vector<std::vector<int>> labels;
    for (const auto& g : groups) labels.push_back(g.labels);
    (a.out ? out : err) << fmt::format("top1_quality: {:.6f}\n",
                                       top1_quality(ranked, labels));
  }
  return kExitOk;
}

// ---- localize ------------------------------------------------------------

struct LocalizeArgs {
  std::string text;
  std::string image;
};

int cmd_localize(Session& session, const LocalizeArgs& a, std::ostream& out) {
  const auto pair = checked_pair(a.text, ImageRef{a.image, std::nullopt});
  Vq2Scorer scorer(session.backend(), session.config().vq2,
                   session.config().parallel);
  const auto result = scorer.score(pair);
  const auto worst = localize_misalignment(result);
  json j{{"pair_id", result.pair_id},
         {"score", result.score},
         {"question", worst.qa.question},
         {"answer", worst.qa.answer.surface},
         {"char_start", worst.qa.answer.char_start},
         {"char_end", worst.qa.answer.char_end},
         {"predicate_question", worst.predicate_question},
         {"qa_score", worst.score}};
  if (worst.vqa_answer) j["vqa_answer"] = *worst.vqa_answer;
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- congen --------------------------------------------------------------

struct CongenArgs {
  std::string captions_file;
  std::optional<std::string> out;
  std::optional<int> n_candidates;
  std::optional<std::string> selection;
  std::optional<std::string> exemplars;
};

int cmd_congen(Session& session, const CongenArgs& a, std::ostream& out) {
  ConGenConfig cfg = session.config().congen;
  if (a.n_candidates) cfg.n_candidates = *a.n_candidates;
  if (a.selection) cfg.selection = parse_selection(*a.selection);
  if (a.exemplars) cfg.exemplars = load_exemplars(*a.exemplars);
  cfg.validate();
  const auto captions = load_captions(a.captions_file);
  std::ostringstream jsonl;
  for (const auto& caption : captions) {
    try {
      jsonl << json(generate_contradiction(*session.backend(), caption, cfg,
                                           session.config().parallel))
                   .dump()
            << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoValidCandidates &&
          e.code() != ErrorCode::kEmptyText) {
        throw;
      }
      spdlog::warn("{}", e.what());
      jsonl << json{{"original", caption}, {"error", e.what()}}.dump() << '\n';
    }
  }
  emit(a.out, out, jsonl.str());
  return kExitOk;
}

// ---- report --------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> results;
  std::string human;
  std::optional<std::string> out;
  std::optional<std::string> plot;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, AlignmentResult>> tagged;
  for (const auto& path : a.results) {
    auto part = load_tagged_results(path);
    tagged.insert(tagged.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  const auto cmp = model_comparison(tagged, load_human_ratings(a.human));
  std::ostringstream csv;
  csv << "model_tag,n,mean_score,human_mean,slope,intercept,r_squared\n";
  for (const auto& m : cmp.models) {
    csv << csv_escape(m.model_tag) << ','
        << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", m.n,
                       m.mean_score, m.human_mean, cmp.slope, cmp.intercept,
                       cmp.r_squared);
  }
  emit(a.out, out, csv.str());
  if (a.plot) write_file_atomic(*a.plot, render_comparison_svg(cmp));
  return kExitOk;
}

// Routes spdlog output to the command's error stream for the duration of a
// run, restoring the previous default logger afterwards.
class LogRedirect {
 public:
  explicit LogRedirect(std::ostream& err) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("alignvq", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(previous_->level());
    spdlog::set_default_logger(std::move(logger));
  }
  ~LogRedirect() { spdlog::set_default_logger(previous_); }

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

}  // namespace

std::string render_comparison_svg(const ModelComparison& c) {
  constexpr double kW = 640, kH = 480, kM = 64;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& m : c.models) {
    xmin = std::min(xmin, m.mean_score);
    xmax = std::max(xmax, m.mean_score);
    ymin = std::min(ymin, m.human_mean);
    ymax = std::max(ymax, m.human_mean);
  }
  const auto widen = [](double& lo, double& hi) {
    const double pad = hi > lo ? 0.1 * (hi - lo) : 0.5;
    lo -= pad;
    hi += pad;
  };
  widen(xmin, xmax);
  widen(ymin, ymax);
  const auto px = [&](double x) { return kM + (x - xmin) / (xmax - xmin) * (kW - 2 * kM); };
  const auto py = [&](double y) { return kH - kM - (y - ymin) / (ymax - ymin) * (kH - 2 * kM); };

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kW, kH);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kW, kH);
  s += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{3}\" x2=\"{0}\" y2=\"{1}\" stroke=\"black\"/>\n",
      kM, kH - kM, kW - kM, kM);
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    s += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3f}</text>\n",
        px(xv), kH - kM + 18, xv);
    s += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3f}</text>\n",
        kM - 6, py(yv) + 4, yv);
  }
  s += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">mean alignment "
      "score</text>\n",
      kW / 2, kH - 16);
  s += fmt::format(
      "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 "
      "16 {:.1f})\">human mean</text>\n",
      kH / 2, kH / 2);
  s += fmt::format(
      "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
      "stroke=\"steelblue\" stroke-dasharray=\"4 3\"/>\n",
      px(xmin), py(c.intercept + c.slope * xmin), px(xmax),
      py(c.intercept + c.slope * xmax));
  for (const auto& m : c.models) {
    s += fmt::format(
        "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"4\" fill=\"firebrick\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        px(m.mean_score), py(m.human_mean), px(m.mean_score) + 6,
        py(m.human_mean) - 6, xml_escape(m.model_tag));
  }
  s += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">R² = {:.4f}</text>\n",
      kW / 2, kM / 2, c.r_squared);
  s += "</svg>\n";
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const EnvLookup& env) {
  LogRedirect log_redirect(err);
  CLI::App app{"Text-image alignment scoring and evaluation", "alignvq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "alignvq 0.1.0");

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--fixtures", g.fixtures, "Mock backend fixture file (JSONL)")
      ->check(CLI::ExistingFile);
  app.add_option("--endpoint", g.endpoint, "Remote inference endpoint URL");
  app.add_option("--timeout", g.timeout_s, "Remote request timeout in seconds");
  app.add_option("--max-in-flight", g.max_in_flight, "Concurrent remote requests");
  app.add_option("--parallel", g.parallel, "Bound on concurrent scoring work")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", g.cache_dir, "Persistent score cache directory");
  app.add_option("--variant", g.variant, "VQ2 variant")
      ->check(CLI::IsMember({"A", "B", "C"}));
  app.add_option("--f1-threshold", g.f1_threshold, "Round-trip token F1 threshold")
      ->check(CLI::Range(0.0, 1.0));
  app.add_flag("--stats", g.stats, "Print backend call and cache counts to stderr");

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Score one text-image pair");
  score->add_option("--text", score_args.text, "Caption or prompt")->required();
  score->add_option("--image", score_args.image, "Image path or URI")->required();
  score->add_option("--scorer", score_args.scorer, "Scorer")
      ->check(CLI::IsMember(kModelScorers));

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "Per-source ROC AUC on a labeled dataset");
  eval->alias("eval");
  eval->add_option("--dataset", eval_args.dataset, "JSONL or CSV dataset")
      ->required()->check(CLI::ExistingFile);
  eval->add_option("--scorer", eval_args.scorer, "Scorer")->check(CLI::IsMember(kAllScorers));
  eval->add_option("--out", eval_args.out, "Report CSV path (default stdout)");
  eval->add_option("--results", eval_args.results, "Per-pair results JSONL path");
  eval->add_option("--seed", eval_args.seed, "Seed for the random scorer");

  WinoArgs wino_args;
  auto* wino = app.add_subcommand("winoground", "Winoground text, image and group scores");
  wino->add_option("--dataset", wino_args.dataset, "Winoground JSONL")
      ->check(CLI::ExistingFile);
  wino->add_option("--synthetic", wino_args.synthetic, "Generate N synthetic examples")
      ->check(CLI::PositiveNumber);
  wino->add_option("--scorer", wino_args.scorer, "Scorer")->check(CLI::IsMember(kAllScorers));
  wino->add_option("--seed", wino_args.seed, "Seed for the random scorer");

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Re-rank image candidates per prompt");
  rank->add_option("--groups", rank_args.groups, "Prompt groups JSONL")
      ->required()->check(CLI::ExistingFile);
  rank->add_option("--scorer", rank_args.scorer, "Scorer")->check(CLI::IsMember(kAllScorers));
  rank->add_option("--out", rank_args.out, "Ranked JSONL path (default stdout)");
  rank->add_option("--seed", rank_args.seed, "Seed for the random scorer");

  LocalizeArgs loc_args;
  auto* loc = app.add_subcommand("localize", "Report the lowest-scoring question");
  loc->add_option("--text", loc_args.text, "Caption")->required();
  loc->add_option("--image", loc_args.image, "Image path or URI")->required();

  CongenArgs congen_args;
  auto* congen = app.add_subcommand("congen", "Generate contradicting captions");
  congen->add_option("--captions-file", congen_args.captions_file, "One caption per line")
      ->required()->check(CLI::ExistingFile);
  congen->add_option("--out", congen_args.out, "Output JSONL path (default stdout)");
  congen->add_option("--n", congen_args.n_candidates, "Candidates per caption")
      ->check(CLI::PositiveNumber);
  congen->add_option("--selection", congen_args.selection, "Selection rule")
      ->check(CLI::IsMember({"max_contradiction", "min_entailment"}));
  congen->add_option("--exemplars", congen_args.exemplars, "Exemplar JSON file")
      ->check(CLI::ExistingFile);

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Compare models against human ratings");
  report->add_option("--results", report_args.results, "Results JSONL files")
      ->required()->check(CLI::ExistingFile);
  report->add_option("--human", report_args.human, "CSV model_tag,human_mean")
      ->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_args.out, "Report CSV path (default stdout)");
  report->add_option("--plot", report_args.plot, "Scatter plot SVG path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (report->parsed()) return cmd_report(report_args, out);
    Session session(resolve_config(g, env), err, g.stats);
    if (score->parsed()) return cmd_score(session, score_args, out);
    if (eval->parsed()) return cmd_evaluate(session, eval_args, out);
    if (wino->parsed()) return cmd_winoground(session, wino_args, out);
    if (rank->parsed()) return cmd_rank(session, rank_args, out, err);
    if (loc->parsed()) return cmd_localize(session, loc_args, out);
    if (congen->parsed()) return cmd_congen(session, congen_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace alignvq
