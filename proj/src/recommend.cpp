#include "ctextr/recommend.hpp"

#include <algorithm>
#include <numeric>

namespace ctextr {

std::set<std::string> excluded_forms(const Video& video, const Gazetteer& gaz,
                                     const Lexicon& lex, const Query* query) {
  std::set<std::string> out;
  for (const auto& tag : video.raw_tags) out.insert(fold(tag));
  for (const auto& e : extract_entities(tokenize_all(video.raw_tags), gaz, lex)) {
    out.insert(e.folded);
  }
  if (query != nullptr) {
    for (const auto& e : query->entities) out.insert(e.folded);
  }
  return out;
}

Recommendation recommend(const ScoreVector<double>& scores,
                         const CooccurrenceGraph& graph, const Video& video,
                         std::size_t k, const std::set<std::string>& excluded) {
  if (k < 1) throw Error("k must be >= 1");
  Recommendation rec;
  rec.video_id = video.id;
  rec.k_requested = k;
  if (graph.size() == 0) return rec;
  if (static_cast<std::size_t>(scores.scores.size()) != graph.size()) {
    throw Error("score vector does not match graph size");
  }

  std::set<std::string> raw;
  for (const auto& tag : video.raw_tags) raw.insert(fold(tag));

  std::vector<std::size_t> order(graph.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = scores.scores(static_cast<Eigen::Index>(a));
    const double sb = scores.scores(static_cast<Eigen::Index>(b));
    if (sa != sb) return sa > sb;
    return graph.vertices[a] < graph.vertices[b];
  });
  for (const std::size_t v : order) {
    if (rec.items.size() >= k) break;
    const auto& form = graph.vertices[v];
    if (raw.contains(form) || excluded.contains(form)) continue;
    rec.items.push_back({form, scores.scores(static_cast<Eigen::Index>(v))});
  }
  return rec;
}

std::vector<std::string> enriched_tags(const Video& video,
                                       const Recommendation& rec) {
  std::vector<std::string> out = video.raw_tags;
  for (const auto& item : rec.items) out.push_back(item.tag);
  return out;
}

}  // namespace ctextr
