#ifndef CTEXTR_GRAPH_HPP_
#define CTEXTR_GRAPH_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ctextr/corpus.hpp"
#include "ctextr/entity.hpp"
#include "ctextr/retrieval.hpp"

namespace ctextr {

// Entities reserved from one resource's title + abstract. Only entities
// with a noun, adjective or verb reading survive; one entry per folded form.
struct ContextDocument {
  std::string doc_id;
  std::vector<TagEntity> entities;

  std::vector<std::string> folded_forms() const;
};

bool is_reserved(const TagEntity& e);

std::vector<ContextDocument> build_context(
    std::span<const SameCtextResource> resources, const Gazetteer& gaz,
    const Lexicon& lex);

using WeightMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Undirected co-occurrence graph. weights(i, j) counts the documents that
// contain both vertex i and vertex j; the diagonal is zero.
struct CooccurrenceGraph {
  std::vector<std::string> vertices;  // lexicographic
  WeightMatrix weights;

  std::size_t size() const { return vertices.size(); }
  std::optional<std::size_t> index_of(std::string_view folded) const;
};

CooccurrenceGraph build_graph(std::span<const ContextDocument> docs);

// Overload for plain entity sets, one set per document.
CooccurrenceGraph build_graph(std::span<const std::vector<std::string>> docs);

// `entity_i<TAB>entity_j<TAB>weight` for every i < j with weight > 0.
void write_graph(std::ostream& out, const CooccurrenceGraph& graph);

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row-stochastic version of a non-negative weight matrix. Rows summing to
// zero become uniform 1/n rows.
template <typename Scalar = double, typename Derived>
Matrix<Scalar> row_normalize(const Eigen::MatrixBase<Derived>& weights) {
  const Eigen::Index n = weights.rows();
  if (n == 0) throw Error("empty graph");
  if (weights.cols() != n) throw Error("weight matrix must be square");
  Matrix<Scalar> out = weights.template cast<Scalar>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar sum = out.row(i).sum();
    if (sum > Scalar(0)) {
      out.row(i) /= sum;
    } else {
      out.row(i).setConstant(Scalar(1) / Scalar(n));
    }
  }
  return out;
}

template <typename Scalar = double>
Matrix<Scalar> row_normalize(const CooccurrenceGraph& graph) {
  return row_normalize<Scalar>(graph.weights);
}

template <typename Scalar = double>
struct SignificanceOptions {
  Scalar alpha = Scalar(0.85);
  Scalar tol = Scalar(1e-10);  // on the L1 change between iterates
  int max_iter = 200;
};

template <typename Scalar = double>
struct ScoreVector {
  Vector<Scalar> scores;
  int iterations = 0;
  Scalar residual = 0;  // L1 change at the last step
  bool converged = false;
};

// Damped power iteration s <- alpha * P^T s + (1 - alpha) / n, starting
// from the uniform vector, where P is the row-normalized weight matrix.
// Mass flows along out-edges so the scores keep summing to one.
// Hitting max_iter is reported through `converged`, not thrown.
template <typename Scalar = double, typename Derived>
ScoreVector<Scalar> significance(const Eigen::MatrixBase<Derived>& weights,
                                 const SignificanceOptions<Scalar>& opts = {}) {
  if (weights.rows() == 0) throw Error("empty graph");
  if (!(opts.alpha > Scalar(0) && opts.alpha < Scalar(1))) {
    throw Error("alpha must lie in (0, 1)");
  }
  if (!(opts.tol > Scalar(0))) throw Error("tol must be > 0");
  if (opts.max_iter < 1) throw Error("max_iter must be >= 1");

  const Eigen::Index n = weights.rows();
  const Matrix<Scalar> transition_t = row_normalize<Scalar>(weights).transpose();
  const Scalar teleport = (Scalar(1) - opts.alpha) / Scalar(n);

  ScoreVector<Scalar> result;
  result.scores = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
  Vector<Scalar> next(n);
  for (int k = 1; k <= opts.max_iter; ++k) {
    next.noalias() = opts.alpha * (transition_t * result.scores);
    next.array() += teleport;
    result.residual = (next - result.scores).template lpNorm<1>();
    result.scores.swap(next);
    result.iterations = k;
    if (result.residual < opts.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

template <typename Scalar = double>
ScoreVector<Scalar> significance(const CooccurrenceGraph& graph,
                                 const SignificanceOptions<Scalar>& opts = {}) {
  return significance<Scalar>(graph.weights, opts);
}

}  // namespace ctextr

#endif  // CTEXTR_GRAPH_HPP_
