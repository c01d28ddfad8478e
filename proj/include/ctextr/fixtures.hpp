#ifndef CTEXTR_FIXTURES_HPP_
#define CTEXTR_FIXTURES_HPP_

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctextr/corpus.hpp"
#include "ctextr/eval.hpp"

namespace ctextr::fixtures {

// Bundled data directory (set at build time).
std::filesystem::path data_dir();

// A desk-scale reconstruction of one event: the video, its related videos,
// hand-written resources about the event, and what the pipeline is
// expected to produce from them under the default configuration.
struct Scenario {
  std::string name;
  Video video;
  std::vector<Video> related;
  std::vector<WebDocument> corpus_docs;
  std::vector<std::string> expected_query;
  std::set<std::string> expected_recommendation_superset;
};

std::vector<std::string> scenario_names();

// Throws Error listing the available names for an unknown scenario.
Scenario load_scenario(std::string_view name,
                       const std::filesystem::path& dir = data_dir());

Lexicon load_fixture_lexicon(const std::filesystem::path& dir = data_dir());
Gazetteer load_fixture_gazetteer(const std::filesystem::path& dir = data_dir());

// Labeled videos whose recommended tags are planted to correlate with the
// category much more strongly than their raw tags do.
struct SyntheticEvalOptions {
  std::size_t categories = 5;
  std::size_t videos = 250;
  std::size_t raw_tags = 3;
  std::size_t recommended_tags = 5;
  double raw_signal = 0.2;          // chance a raw tag is category-specific
  double recommended_signal = 0.8;  // same for recommended tags
  std::uint64_t seed = 20091224;
};

struct SyntheticEvalSet {
  std::vector<Video> videos;
  RecommendationMap recommendations;
};

SyntheticEvalSet synthetic_eval_set(const SyntheticEvalOptions& opts = {});

// Recommendation lines in the format cmd_recommend writes.
void write_recommendations(std::ostream& out, const RecommendationMap& recs);

}  // namespace ctextr::fixtures

#endif  // CTEXTR_FIXTURES_HPP_
