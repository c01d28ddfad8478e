#ifndef CTEXTR_TEXT_HPP_
#define CTEXTR_TEXT_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctextr {

// Raised for malformed input files, bad arguments and violated
// preconditions. Messages are meant to be shown to the user as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple Unicode lowercase over UTF-8. Covers ASCII, Latin-1, Latin
// Extended-A, Greek and Cyrillic; every other code point is copied through.
// Invalid UTF-8 bytes are copied unchanged.
std::string fold(std::string_view text);

// Splits on ASCII whitespace. Empty pieces are dropped.
std::vector<std::string_view> split_whitespace(std::string_view text);

// Removes leading and trailing ASCII punctuation.
std::string_view strip_punctuation(std::string_view word);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// 64-bit FNV-1a. Stable across platforms, used for deterministic splits.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace ctextr

#endif  // CTEXTR_TEXT_HPP_
