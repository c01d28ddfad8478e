#ifndef CTEXTR_CORPUS_HPP_
#define CTEXTR_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctextr/text.hpp"

namespace ctextr {

// Part-of-speech and named-entity labels. `other` is a real label: words
// missing from the lexicon are attributed {other}.
enum class Pos : std::uint8_t { noun, verb, adjective, other };
enum class Ne : std::uint8_t { person, location, organization, other };

// Small value-type set over a four-valued label enum.
template <typename Label>
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr LabelSet(std::initializer_list<Label> labels) {
    for (const Label l : labels) insert(l);
  }

  constexpr void insert(Label l) { bits_ |= bit(l); }
  constexpr bool contains(Label l) const { return (bits_ & bit(l)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(LabelSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr LabelSet& operator|=(LabelSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr LabelSet operator|(LabelSet a, LabelSet b) { return a |= b; }
  friend constexpr bool operator==(LabelSet, LabelSet) = default;

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (std::uint8_t i = 0; i < 4; ++i) {
      if (bits_ & (1u << i)) out.push_back(static_cast<Label>(i));
    }
    return out;
  }

 private:
  static constexpr std::uint8_t bit(Label l) {
    return static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(l));
  }
  std::uint8_t bits_ = 0;
};

using PosSet = LabelSet<Pos>;
using NeSet = LabelSet<Ne>;

std::string_view to_string(Pos p);
std::string_view to_string(Ne n);
// Throws Error naming the label when it is not one of the four names.
Pos parse_pos(std::string_view s);
Ne parse_ne(std::string_view s);

// The fifteen YouTube-provided category names used as ground truth.
inline constexpr std::array<std::string_view, 15> kCategories = {
    "Autos & Vehicles", "Comedy",           "Education",
    "Entertainment",    "Film & Animation", "Gaming",
    "Howto & Style",    "Music",            "News & Politics",
    "Nonprofits & Activism", "People & Blogs", "Pets & Animals",
    "Science & Technology",  "Sports",         "Travel & Events"};

// Index into kCategories, or nullopt for an unknown name.
std::optional<int> category_index(std::string_view name);

struct Video {
  std::string id;
  std::string title;
  std::vector<std::string> raw_tags;
  std::vector<std::string> related_ids;
  std::optional<int> category;  // index into kCategories

  friend bool operator==(const Video&, const Video&) = default;
};

struct WebDocument {
  std::string url;
  std::string title;
  std::string abstract;
  int source_rank = 1;

  friend bool operator==(const WebDocument&, const WebDocument&) = default;
};

bool is_absolute_uri(std::string_view url);

// Word-level POS/NE attributes. Keys are stored folded; lookups fold.
class Lexicon {
 public:
  void add(std::string_view word, PosSet pos, NeSet ne);

  // Empty set when the word is absent from the respective map.
  PosSet pos(std::string_view word) const;
  NeSet ne(std::string_view word) const;

  std::size_t pos_entries() const { return pos_map_.size(); }
  std::size_t ne_entries() const { return ne_map_.size(); }
  std::set<std::string> words() const;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  std::map<std::string, PosSet, std::less<>> pos_map_;
  std::map<std::string, NeSet, std::less<>> ne_map_;
};

// Multi-word surface forms for longest-match scanning. Entries are stored
// as folded tokens joined by single spaces.
class Gazetteer {
 public:
  static constexpr std::size_t kMaxEntryTokens = 6;

  // Returns false (and stores nothing) for an empty entry or one longer
  // than kMaxEntryTokens tokens.
  bool add(std::string_view surface);

  bool contains(std::string_view folded_key) const {
    return entries_.find(folded_key) != entries_.end();
  }
  std::size_t max_tokens() const { return max_tokens_; }
  std::size_t size() const { return entries_.size(); }
  const std::set<std::string, std::less<>>& entries() const { return entries_; }

  friend bool operator==(const Gazetteer& a, const Gazetteer& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::set<std::string, std::less<>> entries_;
  std::size_t max_tokens_ = 0;
};

// Line-delimited JSON records. Blank lines are skipped but still counted
// for error messages.
std::vector<Video> parse_videos(std::istream& in);
std::vector<Video> load_videos(const std::filesystem::path& path);
void write_videos(std::ostream& out, const std::vector<Video>& videos);

std::vector<WebDocument> parse_documents(std::istream& in);
std::vector<WebDocument> load_documents(const std::filesystem::path& path);
void write_documents(std::ostream& out, const std::vector<WebDocument>& docs);

// `word|pos1,pos2|ne1,ne2` per line; `#` starts a comment line.
Lexicon parse_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);
void write_lexicon(std::ostream& out, const Lexicon& lex);

// One surface form per line; `#` starts a comment line. Entries longer
// than Gazetteer::kMaxEntryTokens tokens are skipped.
Gazetteer parse_gazetteer(std::istream& in);
Gazetteer load_gazetteer(const std::filesystem::path& path);
void write_gazetteer(std::ostream& out, const Gazetteer& gaz);

}  // namespace ctextr

#endif  // CTEXTR_CORPUS_HPP_
