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


#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "alignvq/cli.hpp"
#include "alignvq/config.hpp"
#include "alignvq/dataset_io.hpp"
#include "golden.hpp"
#include "test_util.hpp"

namespace alignvq {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

EnvLookup fake_env(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](std::string_view name) -> std::optional<std::string> {
    const auto it = vars.find(std::string(name));
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

struct CliRun {
  int rc = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  CliRun r;
  r.rc = run_cli(args, out, err, fake_env(std::move(env)));
  r.out = out.str();
  r.err = err.str();
  return r;
}

TEST(Config, Defaults) {
  const auto cfg = load_config(std::nullopt, fake_env({}));
  EXPECT_EQ(cfg.backend.backend_id, "mock");
  EXPECT_FALSE(cfg.backend.endpoint.has_value());
  EXPECT_EQ(cfg.vq2.variant, Vq2Variant::kC);
  EXPECT_DOUBLE_EQ(cfg.vq2.qg_cfg.f1_threshold, 0.54);
  EXPECT_EQ(cfg.parallel, 1u);
  EXPECT_FALSE(cfg.cache_dir.has_value());
}

TEST(Config, FileThenEnvPrecedence) {
  const auto dir = golden::scratch_dir("config");
  write(dir / "c.json", R"({"backend":{"timeout_s":5,"fixture_path":"fx.jsonl"},
                           "vq2":{"variant":"B"},"parallel":3,"cache_dir":"cache",
                           "congen":{"n_candidates":4,"selection":"min_entailment"}})");
  auto cfg = load_config((dir / "c.json").string(), fake_env({}));
  EXPECT_DOUBLE_EQ(cfg.backend.timeout_s, 5.0);
  EXPECT_EQ(*cfg.backend.fixture_path, (dir / "fx.jsonl").string());
  EXPECT_EQ(*cfg.cache_dir, (dir / "cache").string());
  EXPECT_EQ(cfg.vq2.variant, Vq2Variant::kB);
  EXPECT_EQ(cfg.parallel, 3u);
  EXPECT_EQ(cfg.congen.n_candidates, 4);
  EXPECT_EQ(cfg.congen.selection, Selection::kMinEntailment);

  cfg = load_config(std::nullopt, fake_env({{"ALIGNVQ_CONFIG", (dir / "c.json").string()},
                                            {"ALIGNVQ_TIMEOUT_S", "7.5"},
                                            {"ALIGNVQ_VARIANT", "A"},
                                            {"ALIGNVQ_PARALLEL", "2"},
                                            {"ALIGNVQ_F1_THRESHOLD", "0.6"}}));
  EXPECT_DOUBLE_EQ(cfg.backend.timeout_s, 7.5);
  EXPECT_EQ(cfg.vq2.variant, Vq2Variant::kA);
  EXPECT_EQ(cfg.parallel, 2u);
  EXPECT_DOUBLE_EQ(cfg.vq2.qg_cfg.f1_threshold, 0.6);
  EXPECT_EQ(cfg.congen.n_candidates, 4);
}

TEST(Config, Rejections) {
  const auto dir = golden::scratch_dir("config_bad");
  write(dir / "unknown.json", R"({"bakend":{}})");
  EXPECT_ALIGNVQ_ERROR(load_config((dir / "unknown.json").string(), fake_env({})), kInvalidConfig);
  write(dir / "broken.json", "{");
  EXPECT_ALIGNVQ_ERROR(load_config((dir / "broken.json").string(), fake_env({})), kInvalidConfig);
  EXPECT_ALIGNVQ_ERROR(
      load_config(std::nullopt, fake_env({{"ALIGNVQ_TIMEOUT_S", "0"}})).validate(),
      kInvalidConfig);
  EXPECT_ALIGNVQ_ERROR(load_config(std::nullopt, fake_env({{"ALIGNVQ_PARALLEL", "x"}})),
                       kInvalidConfig);
  EXPECT_ALIGNVQ_ERROR(load_config(std::nullopt, fake_env({{"ALIGNVQ_VARIANT", "Z"}})),
                       kInvalidConfig);
}

TEST(Cli, FlagsOverrideEnvironment) {
  // The environment asks for an unreachable endpoint; the flag clears it back
  // to a fixture file, so the run stays local.
  const auto dir = golden::scratch_dir("cli_flags");
  write(dir / "fx.jsonl", "");
  const auto r = run({"--fixtures", (dir / "fx.jsonl").string(), "--variant", "B", "score",
                      "--text", "a red car", "--image", "mock://car"},
                     {{"ALIGNVQ_VARIANT", "A"}});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("scorer_id"), "vq2b");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).rc, kExitUsage);
  EXPECT_EQ(run({"bogus"}).rc, kExitUsage);
  EXPECT_EQ(run({"score", "--text", "x"}).rc, kExitUsage);
  EXPECT_EQ(run({"score", "--text", "x", "--image", "mock://a", "--scorer", "nope"}).rc,
            kExitUsage);
  EXPECT_EQ(run({"score", "--text", "x", "--image", "mock://a", "--scorer", "oracle"}).rc,
            kExitUsage);
  EXPECT_EQ(run({"--variant", "Q", "score", "--text", "x", "--image", "mock://a"}).rc,
            kExitUsage);
  EXPECT_EQ(run({"winoground"}).rc, kExitUsage);
  EXPECT_EQ(run({"winoground", "--synthetic", "3", "--dataset", "x.jsonl"}).rc, kExitUsage);
  EXPECT_EQ(run({"--help"}).rc, kExitOk);
}

TEST(Cli, RuntimeErrors) {
  const auto dir = golden::scratch_dir("cli_runtime");
  auto r = run({"score", "--text", "a dog", "--image", (dir / "missing.png").string()});
  EXPECT_EQ(r.rc, kExitFailure);
  EXPECT_NE(r.err.find("ImageUnreadable"), std::string::npos) << r.err;
  r = run({"score", "--text", "   ", "--image", "mock://a"});
  EXPECT_EQ(r.rc, kExitFailure);
  EXPECT_NE(r.err.find("EmptyText"), std::string::npos) << r.err;
  r = run({"--endpoint", "http://127.0.0.1:1", "--timeout", "0.5", "score", "--text", "a dog",
           "--image", "mock://a"});
  EXPECT_EQ(r.rc, kExitFailure);
  EXPECT_NE(r.err.find("BackendUnavailable"), std::string::npos) << r.err;
}

TEST(Cli, ScoreAndLocalize) {
  auto r = run({"score", "--text", "two girls are sitting on some grass", "--image",
                "mock://girls"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("scorer_id"), "vq2");
  EXPECT_DOUBLE_EQ(j.at("score").get<double>(), 0.5);
  EXPECT_FALSE(j.at("qa_breakdown").empty());
  r = run({"score", "--scorer", "ensemble", "--text", "a dog", "--image", "mock://a"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("scorer_id"), "avg(vq2,vnli)");
  r = run({"localize", "--text", "two girls are sitting on some grass", "--image", "mock://g"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  const json loc = json::parse(r.out);
  const auto start = loc.at("char_start").get<std::size_t>();
  const auto end = loc.at("char_end").get<std::size_t>();
  EXPECT_EQ(std::string("two girls are sitting on some grass").substr(start, end - start),
            loc.at("answer").get<std::string>());
}

TEST(Cli, EvaluateGoldenWithWarmCache) {
  const auto dir = golden::scratch_dir("cli_eval");
  const auto set = golden::write_golden_set(dir / "golden");
  auto eval = [&](const std::string& tag) {
    return run({"--fixtures", set.fixtures.string(), "--cache-dir", (dir / "cache").string(),
                "--parallel", "2", "--stats", "evaluate", "--dataset", set.dataset.string(),
                "--out", (dir / (tag + ".csv")).string(), "--results",
                (dir / (tag + ".jsonl")).string()});
  };
  const auto cold = eval("cold");
  ASSERT_EQ(cold.rc, kExitOk) << cold.err;
  EXPECT_EQ(cold.err.find("backend_calls: 0"), std::string::npos) << cold.err;
  const auto warm = eval("warm");
  ASSERT_EQ(warm.rc, kExitOk) << warm.err;
  EXPECT_NE(warm.err.find("backend_calls: 0\n"), std::string::npos) << warm.err;
  EXPECT_NE(warm.err.find("cache_hits: 20\n"), std::string::npos) << warm.err;
  EXPECT_EQ(read_file(dir / "cold.csv"), read_file(dir / "warm.csv"));
  EXPECT_EQ(read_file(dir / "cold.jsonl"), read_file(dir / "warm.jsonl"));
  const std::string csv = read_file(dir / "cold.csv");
  EXPECT_EQ(csv.rfind("dataset_source,n,positives_fraction,roc_auc\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("drawbench,10,0.500000,1.000000"), std::string::npos) << csv;
  EXPECT_NE(csv.find("coco_con,10,0.500000,1.000000"), std::string::npos) << csv;

  auto oracle = run({"eval", "--dataset", set.dataset.string(), "--scorer", "anti-oracle"});
  ASSERT_EQ(oracle.rc, kExitOk) << oracle.err;
  EXPECT_NE(oracle.out.find("drawbench,10,0.500000,0.000000"), std::string::npos);
}

TEST(Cli, WinogroundLabelScorers) {
  auto r = run({"winoground", "--synthetic", "10", "--scorer", "oracle"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "examples: 10\ntext_score: 100.00\nimage_score: 100.00\ngroup_score: 100.00\n");
  r = run({"winoground", "--synthetic", "4", "--scorer", "vnli"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_NE(r.out.find("group_score: 0.00"), std::string::npos) << r.out;
  const auto dir = golden::scratch_dir("cli_wino");
  write(dir / "w.jsonl",
        R"({"id":"w0","caption_0":"a mug in grass","caption_1":"grass in a mug","image_0":"mock://0","image_1":"mock://1"})"
        "\n");
  r = run({"winoground", "--dataset", (dir / "w.jsonl").string(), "--scorer", "anti-oracle"});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_NE(r.out.find("text_score: 0.00"), std::string::npos);
}

TEST(Cli, RankWithLabels) {
  const auto dir = golden::scratch_dir("cli_rank");
  write(dir / "g.jsonl",
        R"({"prompt":"a red car","images":["mock://a","mock://b","mock://c"],"labels":[0,1,0]})"
        "\n"
        R"({"prompt":"a blue car","images":["mock://d","mock://e"],"labels":[1,0]})"
        "\n");
  auto r = run({"rank", "--groups", (dir / "g.jsonl").string(), "--scorer", "oracle", "--out",
                (dir / "ranked.jsonl").string()});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(r.out, "top1_quality: 1.000000\n");
  std::istringstream lines(read_file(dir / "ranked.jsonl"));
  std::string line;
  std::getline(lines, line);
  const json first = json::parse(line);
  EXPECT_EQ(first.at("prompt"), "a red car");
  EXPECT_EQ(first.at("ranked")[0].at("index"), 1);
  EXPECT_EQ(first.at("ranked")[0].at("image").at("uri"), "mock://b");
  r = run({"rank", "--groups", (dir / "g.jsonl").string(), "--scorer", "anti-oracle"});
  ASSERT_EQ(r.rc, kExitOk);
  EXPECT_NE(r.err.find("top1_quality: 0.000000"), std::string::npos) << r.err;
}

TEST(Cli, CongenBatch) {
  const auto dir = golden::scratch_dir("cli_congen");
  write(dir / "empty.txt", "\n  \n");
  auto r = run({"congen", "--captions-file", (dir / "empty.txt").string()});
  EXPECT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(r.out, "");
  write(dir / "caps.txt", "a dog on a couch\n");
  r = run({"congen", "--captions-file", (dir / "caps.txt").string()});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  const json rec = json::parse(r.out);
  EXPECT_EQ(rec.at("original"), "a dog on a couch");
  EXPECT_NE(rec.at("error").get<std::string>().find("NoValidCandidates"), std::string::npos);
  r = run({"congen", "--captions-file", (dir / "caps.txt").string(), "--selection", "best"});
  EXPECT_EQ(r.rc, kExitUsage);
}

TEST(Cli, ReportAndPlot) {
  const auto dir = golden::scratch_dir("cli_report");
  auto line = [](double s) {
    return json(AlignmentResult{"p", "vq2", s, {}, ResultStatus::kOk}).dump() + "\n";
  };
  write(dir / "m1.jsonl", line(0.2) + line(0.4));
  write(dir / "m2.jsonl", line(0.8));
  write(dir / "h.csv", "model_tag,human_mean\nm1,2.0\nm2,4.0\n");
  const std::vector<std::string> args = {"report",   "--results", (dir / "m1.jsonl").string(),
                                         "--results", (dir / "m2.jsonl").string(), "--human",
                                         (dir / "h.csv").string(), "--plot",
                                         (dir / "p.svg").string()};
  auto r = run(args);
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "model_tag,n,mean_score,human_mean,slope,intercept,r_squared\n"
            "m1,2,0.300000,2.000000,4.000000,0.800000,1.000000\n"
            "m2,1,0.800000,4.000000,4.000000,0.800000,1.000000\n");
  const auto svg = read_file(dir / "p.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  ASSERT_EQ(run(args).rc, kExitOk);
  EXPECT_EQ(read_file(dir / "p.svg"), svg);
  write(dir / "h1.csv", "model_tag,human_mean\nm1,2.0\n");
  r = run({"report", "--results", (dir / "m1.jsonl").string(), "--human",
           (dir / "h1.csv").string()});
  EXPECT_EQ(r.rc, kExitFailure);
  EXPECT_NE(r.err.find("FewerThanTwoModels"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace alignvq
