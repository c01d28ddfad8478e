#ifndef CTEXTR_RECOMMEND_HPP_
#define CTEXTR_RECOMMEND_HPP_

#include <set>
#include <string>
#include <vector>

#include "ctextr/corpus.hpp"
#include "ctextr/graph.hpp"
#include "ctextr/query.hpp"

namespace ctextr {

struct RecommendedTag {
  std::string tag;  // folded entity form
  double score = 0;

  friend bool operator==(const RecommendedTag&, const RecommendedTag&) = default;
};

struct Recommendation {
  std::string video_id;
  std::vector<RecommendedTag> items;  // descending score, ties ascending tag
  std::size_t k_requested = 10;
};

// Folded forms that must never be recommended for `video`: its raw tags,
// the entities extracted from them and, when `query` is given, the query
// entities.
std::set<std::string> excluded_forms(const Video& video, const Gazetteer& gaz,
                                     const Lexicon& lex,
                                     const Query* query = nullptr);

// Ranks vertices by (-score, folded form), drops excluded forms and raw
// tags, keeps the first k.
Recommendation recommend(const ScoreVector<double>& scores,
                         const CooccurrenceGraph& graph, const Video& video,
                         std::size_t k = 10,
                         const std::set<std::string>& excluded = {});

// Raw tags followed by the recommended tags.
std::vector<std::string> enriched_tags(const Video& video,
                                       const Recommendation& rec);

}  // namespace ctextr

#endif  // CTEXTR_RECOMMEND_HPP_
