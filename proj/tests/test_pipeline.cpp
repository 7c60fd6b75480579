//
// Copyright (C) 2026 The svocomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "svo/pipeline.hpp"
#include "test_support.hpp"

using namespace svo;
using svo::test::TempDir;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig small_config(const std::string& out, const std::string& extra = "") {
  auto cfg = parse_config_text(
      "corpus = mini_corpus.txt\nmin_count = 5\ndims = 5\ntriples = triples.tsv\n"
      "min_noun_freq = 20\nregimes = dist\ncompositions = f+\n"
      "dataset = GS:canonical:gs_toy.tsv\nseed = 42\n" + extra,
      SVO_DATA_DIR);
  cfg.output = out;
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SVO_CLI_PATH) + " -q " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("the bundled config validates") {
  const auto cfg = parse_config(std::string(SVO_DATA_DIR) + "/pipeline.conf");
  CHECK(validate_config(cfg).empty());
  CHECK(cfg.dims == std::vector<int>{5, 20});
  CHECK(cfg.datasets.size() == 2);
}

TEST_CASE("validation reports violations") {
  auto cfg = small_config("unused");
  cfg.dims = {0};
  auto v = validate_config(cfg);
  REQUIRE_FALSE(v.empty());
  CHECK(std::find(v.begin(), v.end(), "dims must be positive") != v.end());

  cfg = small_config("unused");
  cfg.compositions = {"f+", "xyz"};
  v = validate_config(cfg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("'xyz'") != std::string::npos);
  CHECK(v[0].find("add, mult, co, cs, f+, re, vo") != std::string::npos);

  cfg = small_config("unused");
  cfg.corpus = "/nonexistent/corpus.txt";
  CHECK_FALSE(validate_config(cfg).empty());
}

TEST_CASE("config parsing errors name the line") {
  CHECK_THROWS_WITH_AS(parse_config_text("window = 5\nbogus = 1\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_AS(parse_config_text("window = five\n"), Error);
}

TEST_CASE("config hash tracks result-relevant settings") {
  const auto a = small_config("x");
  auto b = small_config("y");
  CHECK(a.hash() == b.hash());
  b.seed = 43;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("a 1x1 grid is finite and reproducible") {
  TempDir d1("pipe"), d2("pipe");
  const auto r1 = run_pipeline(small_config(d1.str()));
  const auto r2 = run_pipeline(small_config(d2.str()));
  REQUIRE(r1.grid.rows.size() == 1);
  REQUIRE(r1.grid.cols.size() == 1);
  REQUIRE(r1.grid.cells[0][0].has_value());
  CHECK(std::isfinite(*r1.grid.cells[0][0]));
  CHECK(slurp(r1.grid_path) == slurp(r2.grid_path));
  CHECK(slurp(d1.str("results.tsv")).find("master_seed=42") != std::string::npos);
}

TEST_CASE("the full bundled grid has 21 rows and 4 columns") {
  TempDir d("pipe");
  auto cfg = parse_config(std::string(SVO_DATA_DIR) + "/pipeline.conf");
  cfg.output = d.str();
  const auto r = run_pipeline(cfg);
  CHECK(r.grid.rows.size() == 21);
  CHECK(r.grid.cols.size() == 4);
  for (const auto& row : r.grid.cells) CHECK(row.size() == 4);
  CHECK(r.grid.rows[0].regime == "dist");
  CHECK(r.grid.rows[20].regime == "reg+");
  CHECK(r.grid.rows[20].composition == "vo");
}

TEST_CASE("changing only the dataset reruns only evaluation") {
  TempDir d("pipe");
  fs::copy_file(std::string(SVO_DATA_DIR) + "/gs_toy.tsv", d.str("gs.tsv"));
  auto cfg = small_config(d.str("out"));
  cfg.datasets = {{"GS", "canonical", d.str("gs.tsv")}};
  const auto cold = run_pipeline(cfg);
  CHECK(cold.stages.at("space").misses == 1);

  const auto warm = run_pipeline(cfg);
  for (const auto& [stage, st] : warm.stages) {
    CAPTURE(stage);
    CHECK(st.misses == 0);
  }
  CHECK(slurp(cold.grid_path) == slurp(warm.grid_path));

  std::ofstream(d.str("gs.tsv"), std::ios::app) << "extra\tman\tdraw\tpicture\tman\tdepict\tpicture\tz\t6\n";
  const auto touched = run_pipeline(cfg);
  CHECK(touched.stages.at("space").misses == 0);
  CHECK(touched.stages.at("data").misses == 0);
  CHECK(touched.stages.at("train").misses == 0);
  CHECK(touched.stages.at("evaluate").misses == 1);
}

TEST_CASE("stage failures name the stage") {
  TempDir d("pipe");
  auto cfg = small_config(d.str());
  std::ofstream(d.str("bad-triples.tsv")) << "only\ttwo\n";
  cfg.triples = d.str("bad-triples.tsv");
  try {
    run_pipeline(cfg);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "data");
  }
}

TEST_CASE("command-line exit codes") {
  TempDir d("cli");
  const std::string data = SVO_DATA_DIR;
  CHECK(run_cli("validate --config " + data + "/pipeline.conf") == 0);

  std::ofstream(d.str("bad.conf")) << "corpus = " << data << "/mini_corpus.txt\ndims = 0\n";
  CHECK(run_cli("validate --config " + d.str("bad.conf")) == 1);
  CHECK(run_cli("run --config " + d.str("bad.conf")) == 1);

  std::ofstream(d.str("broken.space")) << "K 2 1\nword 1.0\n";
  CHECK(run_cli("evaluate --dataset " + data + "/gs_toy.tsv --format canonical --space " +
                d.str("broken.space") + " --verbs " + d.str() + " --comp add") == 2);

  const std::string space = d.str("s.txt");
  CHECK(run_cli("build-space --corpus " + data + "/mini_corpus.txt --window 5 --min-count 5 --dim 5 --out " +
                space) == 0);
  CHECK(run_cli("make-data --triples " + data + "/triples.tsv --space " + space +
                " --min-noun-freq 20 --seed 1 --out " + d.str("data")) == 0);
  CHECK(run_cli("train --regime dist --data " + d.str("data") + " --space " + space + " --out " +
                d.str("dist")) == 0);
  CHECK(run_cli("evaluate --dataset " + data + "/gs_toy.tsv --format canonical --space " + space +
                " --verbs " + d.str("dist") + " --comp f+ --out " + d.str("r.tsv")) == 0);
  CHECK(fs::exists(d.str("r.tsv")));
}

}  // TEST_SUITE
