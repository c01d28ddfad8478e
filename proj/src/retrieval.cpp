#include "ctextr/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ctextr/entity.hpp"

namespace ctextr {
namespace {

using nlohmann::json;

std::vector<std::string> folded_terms(const WebDocument& doc) {
  std::vector<std::string> terms;
  for (auto& t : tokenize(doc.title)) terms.push_back(std::move(t.folded));
  for (auto& t : tokenize(doc.abstract)) terms.push_back(std::move(t.folded));
  return terms;
}

bool contains_run(std::span<const std::string> haystack,
                  std::span<const std::string> needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace

OfflineIndex OfflineIndex::build(std::vector<WebDocument> docs) {
  OfflineIndex index;
  std::unordered_set<std::string> urls;
  for (std::size_t id = 0; id < docs.size(); ++id) {
    if (!urls.insert(docs[id].url).second) {
      throw Error("duplicate url '" + docs[id].url + "'");
    }
    std::map<std::string, std::size_t> tf;
    for (auto& term : folded_terms(docs[id])) ++tf[std::move(term)];
    // Doc ids are visited in increasing order, so postings stay sorted.
    for (auto& [term, count] : tf) index.postings_[term].push_back({id, count});
  }
  index.docs_ = std::move(docs);
  return index;
}

std::span<const Posting> OfflineIndex::postings(std::string_view term) const {
  const auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

double OfflineIndex::idf(std::string_view term) const {
  const double n = static_cast<double>(docs_.size());
  const double df = static_cast<double>(postings(term).size());
  return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

std::vector<WebDocument> OfflineIndex::search(std::string_view query_text,
                                              std::size_t k) const {
  if (k < 1) throw Error("k must be >= 1");
  std::set<std::string> terms;
  for (auto& t : tokenize(query_text)) terms.insert(std::move(t.folded));

  std::unordered_map<std::size_t, double> scores;
  for (const auto& term : terms) {
    const double w = idf(term);
    for (const auto& p : postings(term)) {
      scores[p.doc] += static_cast<double>(p.tf) * w;
    }
  }
  std::vector<std::pair<std::size_t, double>> ranked(scores.begin(), scores.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);

  std::vector<WebDocument> out;
  out.reserve(ranked.size());
  for (const auto& [doc, _] : ranked) {
    WebDocument d = docs_[doc];
    d.source_rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(d));
  }
  return out;
}

void OfflineIndex::write(std::ostream& out) const {
  json docs = json::array();
  for (const auto& d : docs_) {
    docs.push_back({{"url", d.url},
                    {"title", d.title},
                    {"abstract", d.abstract},
                    {"source_rank", d.source_rank}});
  }
  json postings = json::object();
  for (const auto& [term, list] : postings_) {
    json entries = json::array();
    for (const auto& p : list) entries.push_back({p.doc, p.tf});
    postings[term] = std::move(entries);
  }
  const json root = {{"format", "ctextr-index/1"},
                     {"documents", std::move(docs)},
                     {"postings", std::move(postings)}};
  out << root.dump() << '\n';
}

OfflineIndex OfflineIndex::read(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error&) {
    throw Error("index file is not valid JSON");
  }
  if (!root.is_object() || root.value("format", "") != "ctextr-index/1") {
    throw Error("unrecognized index format");
  }
  OfflineIndex index;
  try {
    for (const auto& d : root.at("documents")) {
      WebDocument doc{d.at("url").get<std::string>(), d.at("title").get<std::string>(),
                      d.at("abstract").get<std::string>(),
                      d.value("source_rank", static_cast<int>(index.docs_.size()) + 1)};
      index.docs_.push_back(std::move(doc));
    }
    for (const auto& [term, list] : root.at("postings").items()) {
      auto& out = index.postings_[term];
      for (const auto& p : list) {
        const Posting posting{p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()};
        if (posting.doc >= index.docs_.size()) {
          throw Error("posting for '" + term + "' references a missing document");
        }
        if (!out.empty() && out.back().doc >= posting.doc) {
          throw Error("postings for '" + term + "' are not sorted by doc id");
        }
        out.push_back(posting);
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed index: ") + e.what());
  }
  return index;
}

OfflineIndex OfflineIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read(in);
}

std::vector<WebDocument> search(const SearchBackend& backend,
                                const Query& query, std::size_t k) {
  return backend.search(query.text(), k);
}

std::string_view to_string(MediaForm form) {
  switch (form) {
    case MediaForm::videos: return "Videos";
    case MediaForm::news_articles: return "NewsArticles";
    case MediaForm::blogs_bbs: return "BlogsBBS";
    case MediaForm::music_radio: return "MusicRadio";
    case MediaForm::images: return "Images";
    case MediaForm::unclassified: return "Unclassified";
  }
  return "Unclassified";
}

MediaForm classify_media_form(std::string_view url) {
  static const std::regex kUri(R"(^([a-z][a-z0-9+.\-]*):(//)?([^\s]+)$)");
  const std::string lowered = fold(url);
  std::smatch m;
  if (!std::regex_match(lowered, m, kUri)) return MediaForm::unclassified;
  const std::string rest = "//" + m[3].str();  // host + path + query

  struct Rule {
    MediaForm form;
    std::vector<std::string_view> pieces;
  };
  static const std::vector<Rule> kRules = {
      {MediaForm::videos, {"watch", "/video", "video."}},
      {MediaForm::news_articles, {"/news", "news."}},
      {MediaForm::blogs_bbs, {"blog", "forum", "/bbs"}},
      {MediaForm::music_radio, {"music", "radio"}},
      {MediaForm::images, {"/photo", "image", "/img"}},
  };
  for (const auto& rule : kRules) {
    for (const auto piece : rule.pieces) {
      if (rest.find(piece) != std::string::npos) return rule.form;
    }
  }
  return MediaForm::unclassified;
}

bool is_same_context(const WebDocument& doc, const Query& query) {
  const auto terms = folded_terms(doc);
  return std::all_of(query.entities.begin(), query.entities.end(),
                     [&](const TagEntity& e) {
                       return contains_run(terms, e.folded_words());
                     });
}

std::vector<SameCtextResource> same_context_filter(
    std::span<const WebDocument> results, const Query& query) {
  std::vector<SameCtextResource> out;
  for (const auto& doc : results) {
    if (is_same_context(doc, query)) {
      out.push_back({doc, classify_media_form(doc.url)});
    }
  }
  return out;
}

}  // namespace ctextr
