#include "ctextr/query.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace ctextr {
namespace {

std::vector<TagEntity> by_priority(std::vector<TagEntity> entities) {
  std::stable_sort(entities.begin(), entities.end(),
                   [](const TagEntity& a, const TagEntity& b) {
                     return priority_class(a) < priority_class(b);
                   });
  return entities;
}

}  // namespace

std::vector<std::string> Query::folded_forms() const {
  std::vector<std::string> out;
  out.reserve(entities.size());
  for (const auto& e : entities) out.push_back(e.folded);
  return out;
}

std::string Query::text() const { return join(folded_forms(), " "); }

int priority_class(const TagEntity& e) {
  if (!(e.ne == NeSet{Ne::other}) && !e.ne.empty()) return 0;
  if (e.pos.contains(Pos::noun)) return 1;
  return 2;
}

Query construct_query(const Video& video, std::span<const Video> related,
                      const Gazetteer& gaz, const Lexicon& lex,
                      std::size_t min_entities) {
  if (min_entities < 1) throw Error("min_entities must be >= 1");

  const auto tag_tokens = tokenize_all(video.raw_tags);
  const auto title_tokens = tokenize(video.title);
  if (tag_tokens.empty() && title_tokens.empty() && related.empty()) {
    throw Error("no query material");
  }

  Query query;
  query.video_id = video.id;
  std::unordered_set<std::string> taken;
  auto take_from = [&](const std::vector<TagEntity>& candidates) {
    for (const auto& e : candidates) {
      if (query.entities.size() >= min_entities) return;
      if (taken.insert(e.folded).second) query.entities.push_back(e);
    }
  };

  take_from(by_priority(unique_by_folded(extract_entities(tag_tokens, gaz, lex))));
  take_from(by_priority(unique_by_folded(extract_entities(title_tokens, gaz, lex))));

  if (query.entities.size() < min_entities) {
    std::unordered_map<std::string, TagEntity> first_seen;
    std::map<std::string, std::size_t> frequency;
    for (const auto& r : related) {
      for (auto& e : extract_entities(tokenize_all(r.raw_tags), gaz, lex)) {
        ++frequency[e.folded];
        first_seen.try_emplace(e.folded, std::move(e));
      }
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(frequency.begin(),
                                                           frequency.end());
    // std::map iteration is lexicographic, so stable_sort keeps ties ordered.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<TagEntity> candidates;
    for (const auto& [folded, _] : ranked) candidates.push_back(first_seen.at(folded));
    take_from(candidates);
  }

  if (query.entities.empty()) throw Error("no query material");
  return query;
}

std::vector<Video> resolve_related(const Video& video,
                                   std::span<const Video> collection) {
  std::unordered_map<std::string_view, const Video*> by_id;
  for (const auto& v : collection) by_id.emplace(v.id, &v);
  std::vector<Video> out;
  for (const auto& id : video.related_ids) {
    const auto it = by_id.find(id);
    if (it != by_id.end() && it->second->id != video.id) out.push_back(*it->second);
  }
  return out;
}

}  // namespace ctextr
