#ifndef CTEXTR_QUERY_HPP_
#define CTEXTR_QUERY_HPP_

#include <span>
#include <string>
#include <vector>

#include "ctextr/corpus.hpp"
#include "ctextr/entity.hpp"

namespace ctextr {

// Context query: entities in selection-priority order, no repeated folded
// forms, never empty.
struct Query {
  std::string video_id;
  std::vector<TagEntity> entities;

  std::vector<std::string> folded_forms() const;
  // Folded forms joined by spaces; what a search backend receives.
  std::string text() const;
};

// 0: carries a named-entity label other than `other`; 1: noun; 2: rest.
int priority_class(const TagEntity& e);

// Builds the query from the video's tags, then its title, then the most
// frequent entities among related videos' tags, stopping once
// min_entities are collected. Throws Error("no query material") when
// nothing at all can be extracted.
Query construct_query(const Video& video, std::span<const Video> related,
                      const Gazetteer& gaz, const Lexicon& lex,
                      std::size_t min_entities = 3);

// Related videos of `video` found in `collection`, in related_ids order.
// Unknown ids are ignored.
std::vector<Video> resolve_related(const Video& video,
                                   std::span<const Video> collection);

}  // namespace ctextr

#endif  // CTEXTR_QUERY_HPP_
