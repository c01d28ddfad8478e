#ifndef CTEXTR_ENTITY_HPP_
#define CTEXTR_ENTITY_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctextr/corpus.hpp"

namespace ctextr {

struct Token {
  std::string surface;
  std::string folded;
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Inclusive token range [start, end].
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  friend bool operator==(const Span&, const Span&) = default;
};

// A single- or multi-word candidate tag. pos/ne are unions over the
// constituent words.
struct TagEntity {
  std::string surface;
  std::string folded;
  PosSet pos;
  NeSet ne;
  Span span;

  // Tokens of the folded form, split on the single-space separator.
  std::vector<std::string> folded_words() const;

  friend bool operator==(const TagEntity&, const TagEntity&) = default;
};

// Whitespace split, surrounding ASCII punctuation stripped, empty tokens
// dropped. Positions run 0..n-1.
std::vector<Token> tokenize(std::string_view text);

// Concatenates the tokens of several texts into one stream with
// consecutive positions. Used to scan a video's tag list as one sequence.
std::vector<Token> tokenize_all(std::span<const std::string> texts);

// Greedy left-to-right longest match against the gazetteer. Uncovered
// tokens become single-word entities. The returned spans partition the
// token stream.
std::vector<TagEntity> extract_entities(std::span<const Token> tokens,
                                        const Gazetteer& gaz,
                                        const Lexicon& lex);

// Recomputes pos/ne as the union of the lexicon entries of the words in
// entity.surface; a word missing from a map contributes {other}.
TagEntity entity_attributes(TagEntity entity, const Lexicon& lex);

// Drops later entities whose folded form repeats an earlier one.
std::vector<TagEntity> unique_by_folded(std::vector<TagEntity> entities);

}  // namespace ctextr

#endif  // CTEXTR_ENTITY_HPP_
