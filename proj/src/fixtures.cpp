#include "ctextr/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

namespace ctextr::fixtures {
namespace {

constexpr std::string_view kScenarios[] = {"pope", "dogrescue", "minicooper"};

// Uniform in [0, 1) from the raw engine output; std distributions are not
// reproducible across standard libraries.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

std::string numbered(std::string_view stem, std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return std::string(stem) + "_" + buf;
}

std::string category_stem(int category) {
  std::string stem;
  for (const char c : kCategories[static_cast<std::size_t>(category)]) {
    if (c == ' ' || c == '&') {
      if (!stem.empty() && stem.back() != '_') stem += '_';
    } else {
      stem += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return stem;
}

// Draws `count` distinct tags, each category-specific with probability
// `signal`, otherwise from the shared pool.
std::vector<std::string> draw_tags(std::mt19937_64& rng, std::size_t count,
                                   double signal, const std::string& stem,
                                   std::size_t signal_pool, std::size_t noise_pool) {
  std::vector<std::string> tags;
  std::size_t guard = 0;
  while (tags.size() < count && guard++ < 1000) {
    std::string tag = unit(rng) < signal ? numbered(stem, below(rng, signal_pool))
                                         : numbered("common", below(rng, noise_pool));
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(std::move(tag));
  }
  return tags;
}

}  // namespace

std::filesystem::path data_dir() { return CTEXTR_FIXTURES_DIR; }

std::vector<std::string> scenario_names() {
  return {std::begin(kScenarios), std::end(kScenarios)};
}

Scenario load_scenario(std::string_view name, const std::filesystem::path& dir) {
  if (std::find(std::begin(kScenarios), std::end(kScenarios), name) == std::end(kScenarios)) {
    throw Error("unknown scenario '" + std::string(name) +
                "'; available: " + join(scenario_names(), ", "));
  }
  const auto base = dir / "scenarios" / std::string(name);
  Scenario s;
  s.name = std::string(name);
  auto videos = load_videos(base / "videos.jsonl");
  if (videos.empty()) throw Error("scenario '" + s.name + "' has no video");
  s.video = std::move(videos.front());
  s.related.assign(std::make_move_iterator(videos.begin() + 1),
                   std::make_move_iterator(videos.end()));
  s.corpus_docs = load_documents(base / "corpus.jsonl");

  std::ifstream in(base / "expected.json");
  if (!in) throw Error("scenario '" + s.name + "' has no expected.json");
  try {
    const auto expected = nlohmann::json::parse(in);
    s.expected_query = expected.at("query").get<std::vector<std::string>>();
    const auto superset = expected.at("recommendation_superset").get<std::vector<std::string>>();
    s.expected_recommendation_superset = {superset.begin(), superset.end()};
  } catch (const nlohmann::json::exception& e) {
    throw Error("scenario '" + s.name + "': malformed expected.json: " + e.what());
  }
  return s;
}

Lexicon load_fixture_lexicon(const std::filesystem::path& dir) {
  return load_lexicon(dir / "lexicon.txt");
}

Gazetteer load_fixture_gazetteer(const std::filesystem::path& dir) {
  return load_gazetteer(dir / "gazetteer.txt");
}

SyntheticEvalSet synthetic_eval_set(const SyntheticEvalOptions& opts) {
  if (opts.categories < 2 || opts.categories > kCategories.size()) {
    throw Error("synthetic set needs between 2 and 15 categories");
  }
  constexpr std::size_t kSignalPool = 8;
  constexpr std::size_t kNoisePool = 40;
  std::mt19937_64 rng(opts.seed);
  SyntheticEvalSet set;
  for (std::size_t i = 0; i < opts.videos; ++i) {
    const int category = static_cast<int>(i % opts.categories);
    const std::string stem = category_stem(category);
    char id[32];
    std::snprintf(id, sizeof id, "syn-%04zu", i);
    Video v;
    v.id = id;
    v.title = "synthetic video " + std::to_string(i);
    v.category = category;
    v.raw_tags = draw_tags(rng, opts.raw_tags, opts.raw_signal, stem, kSignalPool, kNoisePool);
    auto recommended = draw_tags(rng, opts.recommended_tags + opts.raw_tags,
                                 opts.recommended_signal, stem, kSignalPool, kNoisePool);
    // Recommendations never repeat a raw tag.
    std::erase_if(recommended, [&](const std::string& t) {
      return std::find(v.raw_tags.begin(), v.raw_tags.end(), t) != v.raw_tags.end();
    });
    if (recommended.size() > opts.recommended_tags) recommended.resize(opts.recommended_tags);
    set.recommendations[v.id] = std::move(recommended);
    set.videos.push_back(std::move(v));
  }
  return set;
}

void write_recommendations(std::ostream& out, const RecommendationMap& recs) {
  for (const auto& [id, tags] : recs) {
    nlohmann::json items = nlohmann::json::array();
    for (std::size_t i = 0; i < tags.size(); ++i) {
      // Synthetic scores: a plain descending sequence.
      items.push_back({{"tag", tags[i]}, {"score", 1.0 / static_cast<double>(i + 2)}});
    }
    out << nlohmann::json{{"video_id", id}, {"recommended", items}}.dump() << '\n';
  }
}

}  // namespace ctextr::fixtures
