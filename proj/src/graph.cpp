#include "ctextr/graph.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

namespace ctextr {

std::vector<std::string> ContextDocument::folded_forms() const {
  std::vector<std::string> out;
  out.reserve(entities.size());
  for (const auto& e : entities) out.push_back(e.folded);
  return out;
}

bool is_reserved(const TagEntity& e) {
  return e.pos.intersects(PosSet{Pos::noun, Pos::adjective, Pos::verb});
}

std::vector<ContextDocument> build_context(
    std::span<const SameCtextResource> resources, const Gazetteer& gaz,
    const Lexicon& lex) {
  std::vector<ContextDocument> docs;
  docs.reserve(resources.size());
  for (const auto& r : resources) {
    ContextDocument d;
    d.doc_id = r.doc.url;
    const auto tokens = tokenize(r.doc.title + " " + r.doc.abstract);
    for (auto& e : unique_by_folded(extract_entities(tokens, gaz, lex))) {
      if (is_reserved(e)) d.entities.push_back(std::move(e));
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::optional<std::size_t> CooccurrenceGraph::index_of(std::string_view folded) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), folded);
  if (it == vertices.end() || *it != folded) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

CooccurrenceGraph build_graph(std::span<const std::vector<std::string>> docs) {
  std::set<std::string> all;
  for (const auto& d : docs) all.insert(d.begin(), d.end());

  CooccurrenceGraph g;
  g.vertices.assign(all.begin(), all.end());
  std::unordered_map<std::string_view, Eigen::Index> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    index.emplace(g.vertices[i], static_cast<Eigen::Index>(i));
  }
  const auto n = static_cast<Eigen::Index>(g.vertices.size());
  g.weights = WeightMatrix::Zero(n, n);

  for (const auto& d : docs) {
    // Each pair counts at most once per document.
    std::vector<Eigen::Index> ids;
    for (const auto& e : d) ids.push_back(index.at(e));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        ++g.weights(ids[a], ids[b]);
        ++g.weights(ids[b], ids[a]);
      }
    }
  }
  return g;
}

CooccurrenceGraph build_graph(std::span<const ContextDocument> docs) {
  std::vector<std::vector<std::string>> sets;
  sets.reserve(docs.size());
  for (const auto& d : docs) sets.push_back(d.folded_forms());
  return build_graph(std::span<const std::vector<std::string>>(sets));
}

void write_graph(std::ostream& out, const CooccurrenceGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (graph.weights(i, j) > 0) {
        out << graph.vertices[i] << '\t' << graph.vertices[j] << '\t'
            << graph.weights(i, j) << '\n';
      }
    }
  }
}

}  // namespace ctextr
