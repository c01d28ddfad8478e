// Independent reference computations used by the unit and acceptance
// suites. Nothing here calls into the code it is used to check.
#ifndef CTEXTR_TESTS_ORACLES_HPP_
#define CTEXTR_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Words = std::vector<std::string>;

// Greedy longest match by linear scan over every entry; returns inclusive
// spans (start, end).
inline std::vector<std::pair<std::size_t, std::size_t>> greedy_segments(
    const Words& stream, const std::vector<Words>& entries) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t i = 0;
  while (i < stream.size()) {
    std::size_t best = 1;
    for (const auto& e : entries) {
      if (e.size() <= best || i + e.size() > stream.size()) continue;
      if (std::equal(e.begin(), e.end(), stream.begin() + static_cast<long>(i))) best = e.size();
    }
    spans.emplace_back(i, i + best - 1);
    i += best;
  }
  return spans;
}

// Every segmentation of the stream into pieces that are either single
// words or gazetteer entries.
inline void all_segmentations(const Words& stream, const std::vector<Words>& entries,
                              std::size_t from, std::vector<Words>& current,
                              std::vector<std::vector<Words>>& out) {
  if (from == stream.size()) {
    out.push_back(current);
    return;
  }
  for (std::size_t len = 1; from + len <= stream.size(); ++len) {
    Words piece(stream.begin() + static_cast<long>(from),
                stream.begin() + static_cast<long>(from + len));
    const bool ok = len == 1 || std::find(entries.begin(), entries.end(), piece) != entries.end();
    if (!ok) continue;
    current.push_back(piece);
    all_segmentations(stream, entries, from + len, current, out);
    current.pop_back();
  }
}

// e[i][j] = number of documents containing both i and j, by scanning every
// document for every ordered vertex pair.
inline Eigen::MatrixXi pair_counts(const std::vector<Words>& docs, const Words& vertices) {
  const auto n = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXi e = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const auto& d : docs) {
        const bool has_i = std::find(d.begin(), d.end(), vertices[i]) != d.end();
        const bool has_j = std::find(d.begin(), d.end(), vertices[j]) != d.end();
        if (has_i && has_j) ++e(i, j);
      }
    }
  }
  return e;
}

// Stationary vector from (I - alpha P^T) s = (1 - alpha) / n e, with P the
// row-normalized weights (zero rows uniform), by dense LU.
inline Eigen::VectorXd stationary(const Eigen::MatrixXi& weights, double alpha) {
  const Eigen::Index n = weights.rows();
  Eigen::MatrixXd p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0;
    for (Eigen::Index j = 0; j < n; ++j) row += weights(i, j);
    for (Eigen::Index j = 0; j < n; ++j) {
      p(i, j) = row > 0 ? weights(i, j) / row : 1.0 / static_cast<double>(n);
    }
  }
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - alpha * p.transpose();
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - alpha) / static_cast<double>(n));
  return a.fullPivLu().solve(b);
}

// Average precision straight from the definition: sum of precision@k over
// relevant ranks k, divided by the number of relevant items.
inline double brute_ap(const std::vector<bool>& rel) {
  double total = 0;
  int relevant = 0;
  for (std::size_t k = 1; k <= rel.size(); ++k) {
    if (!rel[k - 1]) continue;
    ++relevant;
    int hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += rel[j] ? 1 : 0;
    total += static_cast<double>(hits) / static_cast<double>(k);
  }
  return relevant == 0 ? -1.0 : total / relevant;
}

// Symmetric random weight matrix with zero diagonal; some vertices may be
// isolated.
inline Eigen::MatrixXi random_weights(std::mt19937_64& rng, int n, double density,
                                      int max_weight) {
  Eigen::MatrixXi w = Eigen::MatrixXi::Zero(n, n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, max_weight);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < density) w(i, j) = w(j, i) = weight(rng);
    }
  }
  return w;
}

}  // namespace oracle

#endif  // CTEXTR_TESTS_ORACLES_HPP_
