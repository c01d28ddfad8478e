#include "ctextr/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <unordered_set>

#include <json.hpp>

namespace ctextr {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::string line_prefix(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

bool is_blank(std::string_view line) { return split_whitespace(line).empty(); }

bool is_comment(std::string_view line) {
  const auto words = split_whitespace(line);
  return !words.empty() && words.front().front() == '#';
}

json parse_record(const std::string& line, std::size_t line_no) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error&) {
    throw Error(line_prefix(line_no) + "malformed record");
  }
  if (!rec.is_object()) throw Error(line_prefix(line_no) + "record is not an object");
  return rec;
}

std::string string_field(const json& rec, const char* key, std::size_t line_no,
                         bool required) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) {
    if (required) throw Error(line_prefix(line_no) + "missing " + key);
    return {};
  }
  if (!it->is_string()) {
    throw Error(line_prefix(line_no) + key + " must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> list_field(const json& rec, const char* key,
                                    std::size_t line_no) {
  std::vector<std::string> out;
  const auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return out;
  if (!it->is_array()) throw Error(line_prefix(line_no) + key + " must be a list");
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw Error(line_prefix(line_no) + key + " must contain strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename Label, typename Parse>
LabelSet<Label> parse_labels(std::string_view segment, Parse parse) {
  LabelSet<Label> out;
  std::size_t start = 0;
  while (start <= segment.size()) {
    const std::size_t comma = std::min(segment.find(',', start), segment.size());
    const auto words = split_whitespace(segment.substr(start, comma - start));
    if (words.size() > 1) {
      throw Error("unknown label '" + std::string(segment.substr(start, comma - start)) + "'");
    }
    if (!words.empty()) out.insert(parse(fold(words.front())));
    start = comma + 1;
  }
  return out;
}

template <typename Label>
std::string format_labels(LabelSet<Label> set) {
  std::string out;
  for (const Label l : set.labels()) {
    if (!out.empty()) out += ',';
    out += to_string(l);
  }
  return out;
}

}  // namespace

std::string_view to_string(Pos p) {
  switch (p) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::other: return "other";
  }
  return "other";
}

std::string_view to_string(Ne n) {
  switch (n) {
    case Ne::person: return "person";
    case Ne::location: return "location";
    case Ne::organization: return "organization";
    case Ne::other: return "other";
  }
  return "other";
}

Pos parse_pos(std::string_view s) {
  if (s == "noun") return Pos::noun;
  if (s == "verb") return Pos::verb;
  if (s == "adjective") return Pos::adjective;
  if (s == "other") return Pos::other;
  throw Error("unknown POS label '" + std::string(s) + "'");
}

Ne parse_ne(std::string_view s) {
  if (s == "person") return Ne::person;
  if (s == "location") return Ne::location;
  if (s == "organization") return Ne::organization;
  if (s == "other") return Ne::other;
  throw Error("unknown NE label '" + std::string(s) + "'");
}

std::optional<int> category_index(std::string_view name) {
  for (std::size_t i = 0; i < kCategories.size(); ++i) {
    if (kCategories[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool is_absolute_uri(std::string_view url) {
  static const std::regex kAbsolute(R"(^[A-Za-z][A-Za-z0-9+.\-]*:[^\s]+$)");
  return std::regex_match(url.begin(), url.end(), kAbsolute);
}

// --- Lexicon ---------------------------------------------------------------

void Lexicon::add(std::string_view word, PosSet pos, NeSet ne) {
  const std::string key = fold(word);
  if (!pos.empty()) pos_map_[key] |= pos;
  if (!ne.empty()) ne_map_[key] |= ne;
}

PosSet Lexicon::pos(std::string_view word) const {
  const auto it = pos_map_.find(fold(word));
  return it == pos_map_.end() ? PosSet{} : it->second;
}

NeSet Lexicon::ne(std::string_view word) const {
  const auto it = ne_map_.find(fold(word));
  return it == ne_map_.end() ? NeSet{} : it->second;
}

std::set<std::string> Lexicon::words() const {
  std::set<std::string> out;
  for (const auto& [k, _] : pos_map_) out.insert(k);
  for (const auto& [k, _] : ne_map_) out.insert(k);
  return out;
}

Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || is_comment(line)) continue;
    const auto bar1 = line.find('|');
    const auto bar2 = bar1 == std::string::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string::npos || line.find('|', bar2 + 1) != std::string::npos) {
      throw Error(line_prefix(line_no) + "expected word|pos|ne");
    }
    const std::string_view view(line);
    const auto word = split_whitespace(view.substr(0, bar1));
    if (word.size() != 1) throw Error(line_prefix(line_no) + "expected a single word");
    try {
      const auto pos = parse_labels<Pos>(view.substr(bar1 + 1, bar2 - bar1 - 1), parse_pos);
      const auto ne = parse_labels<Ne>(view.substr(bar2 + 1), parse_ne);
      lex.add(word.front(), pos, ne);
    } catch (const Error& e) {
      throw Error(line_prefix(line_no) + e.what());
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_lexicon(in);
}

void write_lexicon(std::ostream& out, const Lexicon& lex) {
  for (const auto& word : lex.words()) {
    out << word << '|' << format_labels(lex.pos(word)) << '|'
        << format_labels(lex.ne(word)) << '\n';
  }
}

// --- Gazetteer -------------------------------------------------------------

bool Gazetteer::add(std::string_view surface) {
  std::vector<std::string> tokens;
  for (const auto piece : split_whitespace(surface)) {
    const auto stripped = strip_punctuation(piece);
    if (!stripped.empty()) tokens.push_back(fold(stripped));
  }
  if (tokens.empty() || tokens.size() > kMaxEntryTokens) return false;
  entries_.insert(join(tokens, " "));
  max_tokens_ = std::max(max_tokens_, tokens.size());
  return true;
}

Gazetteer parse_gazetteer(std::istream& in) {
  Gazetteer gaz;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line) || is_comment(line)) continue;
    gaz.add(line);
  }
  return gaz;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_gazetteer(in);
}

void write_gazetteer(std::ostream& out, const Gazetteer& gaz) {
  for (const auto& e : gaz.entries()) out << e << '\n';
}

// --- Videos ----------------------------------------------------------------

std::vector<Video> parse_videos(std::istream& in) {
  std::vector<Video> videos;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const json rec = parse_record(line, line_no);
    Video v;
    v.id = string_field(rec, "id", line_no, true);
    if (v.id.empty()) throw Error(line_prefix(line_no) + "missing id");
    v.title = string_field(rec, "title", line_no, false);
    std::unordered_set<std::string> folded_tags;
    for (auto& tag : list_field(rec, "tags", line_no)) {
      if (split_whitespace(tag).empty()) continue;
      if (folded_tags.insert(fold(tag)).second) v.raw_tags.push_back(std::move(tag));
    }
    v.related_ids = list_field(rec, "related_ids", line_no);
    const std::string category = string_field(rec, "category", line_no, false);
    if (!category.empty()) {
      v.category = category_index(category);
      if (!v.category) {
        throw Error(line_prefix(line_no) + "unknown category '" + category + "'");
      }
    }
    if (!seen.insert(v.id).second) throw Error("duplicate id '" + v.id + "'");
    videos.push_back(std::move(v));
  }
  return videos;
}

std::vector<Video> load_videos(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_videos(in);
}

void write_videos(std::ostream& out, const std::vector<Video>& videos) {
  for (const auto& v : videos) {
    json rec = {{"id", v.id},
                {"title", v.title},
                {"tags", v.raw_tags},
                {"related_ids", v.related_ids}};
    if (v.category) rec["category"] = std::string(kCategories[*v.category]);
    out << rec.dump() << '\n';
  }
}

// --- Documents -------------------------------------------------------------

std::vector<WebDocument> parse_documents(std::istream& in) {
  std::vector<WebDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const json rec = parse_record(line, line_no);
    WebDocument d;
    d.url = string_field(rec, "url", line_no, true);
    if (!is_absolute_uri(d.url)) {
      throw Error(line_prefix(line_no) + "url is not an absolute URI");
    }
    d.title = string_field(rec, "title", line_no, false);
    d.abstract = string_field(rec, "abstract", line_no, false);
    if (d.title.empty() && d.abstract.empty()) {
      throw Error(line_prefix(line_no) + "title and abstract are both empty");
    }
    d.source_rank = static_cast<int>(docs.size()) + 1;
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<WebDocument> load_documents(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_documents(in);
}

void write_documents(std::ostream& out, const std::vector<WebDocument>& docs) {
  for (const auto& d : docs) {
    const json rec = {{"url", d.url}, {"title", d.title}, {"abstract", d.abstract}};
    out << rec.dump() << '\n';
  }
}

}  // namespace ctextr
