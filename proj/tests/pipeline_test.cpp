#include <fstream>
#include <sstream>

#include <doctest.h>

#include "ctextr/fixtures.hpp"
#include "ctextr/pipeline.hpp"

using namespace ctextr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ctextr_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

PipelineConfig fixture_config(const fs::path& out) {
  const auto data = fixtures::data_dir();
  PipelineConfig c;
  c.videos = data / "pipeline" / "videos.jsonl";
  c.corpus = data / "pipeline" / "corpus.jsonl";
  c.lexicon = data / "lexicon.txt";
  c.gazetteer = data / "gazetteer.txt";
  c.output_dir = out;
  return c;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("index builds and is byte-stable") {
  const auto dir = scratch("index");
  auto c = fixture_config(dir);
  std::ostringstream log;
  REQUIRE(cmd_index(c, log) == kExitOk);
  const auto first = slurp(c.index_path());
  REQUIRE(cmd_index(c, log) == kExitOk);
  CHECK(slurp(c.index_path()) == first);
  CHECK(log.str().find("17 documents") != std::string::npos);
}

TEST_CASE("index failures are fatal") {
  const auto dir = scratch("index_bad");
  auto c = fixture_config(dir);
  std::ostringstream log;
  c.corpus = dir / "missing.jsonl";
  CHECK(cmd_index(c, log) == kExitFatal);
  spit(dir / "bad.jsonl", "{\"url\": \"http://a.example/x\", \"title\": \n");
  c.corpus = dir / "bad.jsonl";
  CHECK(cmd_index(c, log) == kExitFatal);
  CHECK(log.str().find("error: ") != std::string::npos);
}

TEST_CASE("recommend writes one line per video") {
  const auto dir = scratch("recommend");
  auto c = fixture_config(dir);
  std::ostringstream log;
  REQUIRE(cmd_index(c, log) == kExitOk);
  CHECK(cmd_recommend(c, log) == kExitOk);
  const auto text = slurp(c.recommendations_path());
  CHECK(count_lines(text) == 3);
  CHECK(log.str().find("[video=pope-christmas-mass] query=\"pope christmas mass\"") !=
        std::string::npos);
  CHECK(log.str().find("summary: processed=3 succeeded=3") != std::string::npos);

  const auto recs = read_recommendations(c.recommendations_path());
  REQUIRE(recs.size() == 3);
  CHECK(recs.at("doghero-highway").size() <= c.k);
}

TEST_CASE("recommend without a prebuilt index falls back to the corpus") {
  const auto dir = scratch("recommend_corpus");
  auto c = fixture_config(dir);
  std::ostringstream log;
  CHECK(cmd_recommend(c, log) == kExitOk);
  c.corpus.clear();
  c.output_dir = dir / "empty";
  CHECK(cmd_recommend(c, log) == kExitFatal);
}

TEST_CASE("a video without query material is skipped") {
  const auto dir = scratch("recommend_partial");
  auto c = fixture_config(dir);
  auto videos = slurp(c.videos);
  videos += "{\"id\": \"blank\", \"title\": \"\", \"tags\": []}\n";
  spit(dir / "videos.jsonl", videos);
  c.videos = dir / "videos.jsonl";
  std::ostringstream log;
  CHECK(cmd_recommend(c, log) == kExitPartial);
  CHECK(log.str().find("[video=blank] skipped: no query material") != std::string::npos);
  CHECK(log.str().find("no_material=1") != std::string::npos);
  CHECK(count_lines(slurp(c.recommendations_path())) == 3);
}

TEST_CASE("bad configuration is fatal") {
  const auto dir = scratch("recommend_config");
  auto c = fixture_config(dir);
  std::ostringstream log;
  c.alpha = 1.0;
  CHECK(cmd_recommend(c, log) == kExitFatal);
  c.alpha = 0.85;
  c.lexicon = dir / "nope.txt";
  CHECK(cmd_recommend(c, log) == kExitFatal);
  c = fixture_config(dir);
  c.backend = BackendKind::remote;
  CHECK(cmd_recommend(c, log) == kExitFatal);
}

TEST_CASE("output does not depend on the worker count") {
  const auto dir = scratch("workers");
  auto c = fixture_config(dir);
  std::ostringstream log;
  REQUIRE(cmd_recommend(c, log) == kExitOk);
  const auto serial = slurp(c.recommendations_path());
  c.workers = 4;
  REQUIRE(cmd_recommend(c, log) == kExitOk);
  CHECK(slurp(c.recommendations_path()) == serial);
}

TEST_CASE("query entities can be allowed as recommendations") {
  const auto data = fixtures::data_dir();
  const auto lex = fixtures::load_fixture_lexicon();
  const auto gaz = fixtures::load_fixture_gazetteer();
  const auto videos = load_videos(data / "pipeline" / "videos.jsonl");
  const auto index = OfflineIndex::build(load_documents(data / "pipeline" / "corpus.jsonl"));
  PipelineConfig c;
  c.exclude_query_entities = false;
  const auto o = run_video(videos[0], videos, index, gaz, lex, c);
  REQUIRE(o.ok);
  for (const auto& item : o.recommendation.items) {
    for (const auto& tag : videos[0].raw_tags) CHECK(item.tag != fold(tag));
  }
  const auto s = summarize(std::vector<VideoOutcome>{o});
  CHECK(s.succeeded == 1);
  CHECK(s.mean_resources == static_cast<double>(o.resources.size()));
}

TEST_CASE("eval over the shipped synthetic set") {
  const auto dir = scratch("eval");
  PipelineConfig c;
  c.videos = fixtures::data_dir() / "eval" / "videos.jsonl";
  c.recommendations = fixtures::data_dir() / "eval" / "recommendations.jsonl";
  c.output_dir = dir;
  std::ostringstream out, log;
  REQUIRE(cmd_eval(c, out, log) == kExitOk);
  CHECK(fs::is_regular_file(c.report_path()));
  CHECK(out.str().find("enriched") != std::string::npos);

  const auto set = fixtures::synthetic_eval_set();
  const auto report = evaluate(set.videos, set.recommendations);
  CHECK(report.enriched.result.map > report.raw.result.map);
}

TEST_CASE("eval rejects unusable inputs") {
  const auto dir = scratch("eval_bad");
  PipelineConfig c;
  c.output_dir = dir;
  std::ostringstream out, log;
  spit(dir / "recommendations.jsonl", "");

  spit(dir / "one.jsonl",
       "{\"id\": \"a\", \"title\": \"x\", \"tags\": [\"a\"], \"category\": \"Music\"}\n"
       "{\"id\": \"b\", \"title\": \"y\", \"tags\": [\"b\"], \"category\": \"Music\"}\n");
  c.videos = dir / "one.jsonl";
  CHECK(cmd_eval(c, out, log) == kExitFatal);

  spit(dir / "unlabeled.jsonl",
       "{\"id\": \"a\", \"title\": \"x\", \"tags\": [\"a\"]}\n"
       "{\"id\": \"b\", \"title\": \"y\", \"tags\": [\"b\"]}\n");
  c.videos = dir / "unlabeled.jsonl";
  CHECK(cmd_eval(c, out, log) == kExitFatal);

  c.videos = fixtures::data_dir() / "eval" / "videos.jsonl";
  c.recommendations = dir / "absent.jsonl";
  CHECK(cmd_eval(c, out, log) == kExitFatal);
}

TEST_CASE("eval with no recommendations scores both arms equally") {
  const auto dir = scratch("eval_same");
  PipelineConfig c;
  c.videos = fixtures::data_dir() / "eval" / "videos.jsonl";
  c.output_dir = dir;
  spit(dir / "recommendations.jsonl", "");
  std::ostringstream out, log;
  REQUIRE(cmd_eval(c, out, log) == kExitOk);
  const auto videos = load_videos(c.videos);
  const auto report = evaluate(videos, RecommendationMap{});
  CHECK(report.raw.result.map == report.enriched.result.map);
}
