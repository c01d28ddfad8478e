#include "ctextr/entity.hpp"

#include <algorithm>
#include <unordered_set>

namespace ctextr {

std::vector<std::string> TagEntity::folded_words() const {
  std::vector<std::string> out;
  for (const auto w : split_whitespace(folded)) out.emplace_back(w);
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  for (const auto piece : split_whitespace(text)) {
    const auto word = strip_punctuation(piece);
    if (word.empty()) continue;
    tokens.push_back(Token{std::string(word), fold(word), tokens.size()});
  }
  return tokens;
}

std::vector<Token> tokenize_all(std::span<const std::string> texts) {
  std::vector<Token> tokens;
  for (const auto& text : texts) {
    for (auto& t : tokenize(text)) {
      t.position = tokens.size();
      tokens.push_back(std::move(t));
    }
  }
  return tokens;
}

std::vector<TagEntity> extract_entities(std::span<const Token> tokens,
                                        const Gazetteer& gaz,
                                        const Lexicon& lex) {
  std::vector<TagEntity> entities;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t window = std::min(gaz.max_tokens(), tokens.size() - i);
    std::size_t match = 1;
    std::string key;
    for (std::size_t len = window; len >= 2; --len) {
      key = tokens[i].folded;
      for (std::size_t k = 1; k < len; ++k) {
        key += ' ';
        key += tokens[i + k].folded;
      }
      if (gaz.contains(key)) {
        match = len;
        break;
      }
    }
    TagEntity e;
    e.span = Span{tokens[i].position, tokens[i + match - 1].position};
    for (std::size_t k = 0; k < match; ++k) {
      if (k > 0) {
        e.surface += ' ';
        e.folded += ' ';
      }
      e.surface += tokens[i + k].surface;
      e.folded += tokens[i + k].folded;
    }
    entities.push_back(entity_attributes(std::move(e), lex));
    i += match;
  }
  return entities;
}

TagEntity entity_attributes(TagEntity entity, const Lexicon& lex) {
  entity.pos = {};
  entity.ne = {};
  for (const auto word : split_whitespace(entity.surface)) {
    const PosSet pos = lex.pos(word);
    const NeSet ne = lex.ne(word);
    entity.pos |= pos.empty() ? PosSet{Pos::other} : pos;
    entity.ne |= ne.empty() ? NeSet{Ne::other} : ne;
  }
  return entity;
}

std::vector<TagEntity> unique_by_folded(std::vector<TagEntity> entities) {
  std::unordered_set<std::string> seen;
  std::vector<TagEntity> out;
  for (auto& e : entities) {
    if (seen.insert(e.folded).second) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ctextr
