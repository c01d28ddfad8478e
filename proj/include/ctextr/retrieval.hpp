#ifndef CTEXTR_RETRIEVAL_HPP_
#define CTEXTR_RETRIEVAL_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctextr/corpus.hpp"
#include "ctextr/query.hpp"

namespace ctextr {

// Anything that answers a text query with at most k ranked documents
// (ranks 1..n). Implementations must tolerate concurrent search calls.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::vector<WebDocument> search(std::string_view query_text,
                                          std::size_t k) const = 0;
};

struct Posting {
  std::size_t doc = 0;
  std::size_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

// In-memory inverted index over title + abstract terms, ranked by
// smoothed tf-idf. Immutable once built.
class OfflineIndex final : public SearchBackend {
 public:
  // Throws Error naming the url when two documents share it.
  static OfflineIndex build(std::vector<WebDocument> docs);

  // Terms of query_text are tokenized, folded and deduplicated. A document
  // scores sum(tf * idf) over the query terms it contains, with
  // idf = ln((N + 1) / (df + 1)) + 1. Ties go to the lower doc id.
  std::vector<WebDocument> search(std::string_view query_text,
                                  std::size_t k) const override;

  std::span<const Posting> postings(std::string_view term) const;
  double idf(std::string_view term) const;
  const std::vector<WebDocument>& documents() const { return docs_; }
  std::size_t term_count() const { return postings_.size(); }

  void write(std::ostream& out) const;
  static OfflineIndex read(std::istream& in);
  static OfflineIndex load(const std::filesystem::path& path);

  friend bool operator==(const OfflineIndex& a, const OfflineIndex& b) {
    return a.docs_ == b.docs_ && a.postings_ == b.postings_;
  }

 private:
  std::vector<WebDocument> docs_;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
};

inline OfflineIndex index_documents(std::vector<WebDocument> docs) {
  return OfflineIndex::build(std::move(docs));
}

// Query adapter over any backend.
std::vector<WebDocument> search(const SearchBackend& backend,
                                const Query& query, std::size_t k = 10);

// Media forms of collected resources.
enum class MediaForm { videos, news_articles, blogs_bbs, music_radio, images, unclassified };

std::string_view to_string(MediaForm form);

// First matching hyperlink rule wins: video pieces, then news, blogs/BBS,
// music/radio, images. Anything else, including unparsable input, is
// unclassified.
MediaForm classify_media_form(std::string_view url);

struct SameCtextResource {
  WebDocument doc;
  MediaForm form = MediaForm::unclassified;
};

// True iff every query entity occurs as a contiguous run of folded tokens
// in the folded title followed by the folded abstract.
bool is_same_context(const WebDocument& doc, const Query& query);

// Keeps the results that pass is_same_context, in rank order.
std::vector<SameCtextResource> same_context_filter(
    std::span<const WebDocument> results, const Query& query);

// Client for a live search service: GET <endpoint>?q=<text>&num=<k>,
// expecting {"results": [{"url", "title", "abstract"}, ...]}.
// Entries without a valid url or text are skipped.
class RemoteBackend final : public SearchBackend {
 public:
  explicit RemoteBackend(std::string endpoint, int timeout_seconds = 10);

  std::vector<WebDocument> search(std::string_view query_text,
                                  std::size_t k) const override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  int timeout_seconds_;
};

}  // namespace ctextr

#endif  // CTEXTR_RETRIEVAL_HPP_
