#ifndef CTEXTR_EVAL_HPP_
#define CTEXTR_EVAL_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ctextr/corpus.hpp"

namespace ctextr {

enum class TagSource { raw, enriched };

std::string_view to_string(TagSource source);

// Video id -> recommended tags, as read back from a recommendations file.
using RecommendationMap = std::map<std::string, std::vector<std::string>>;

// A bag of folded tag terms with an optional category label (-1 = none).
struct TermDocument {
  std::string id;
  std::vector<std::string> terms;
  int label = -1;
};

// Raw tags, or raw tags plus recommended tags, folded.
std::vector<TermDocument> tag_documents(std::span<const Video> videos,
                                        TagSource source,
                                        const RecommendationMap& recs);

// Term -> column map with smoothed idf, built from training documents only.
class Vocabulary {
 public:
  // idf = ln((N + 1) / (df + 1)) + 1 over the N training documents.
  static Vocabulary build(std::span<const TermDocument> training);
  // Fixed terms and idf values; used to compare feature sets under a
  // shared weighting.
  static Vocabulary with_idf(std::vector<std::string> terms, std::vector<double> idf);

  std::optional<Eigen::Index> index_of(std::string_view term) const;
  double idf(Eigen::Index column) const { return idf_[column]; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(terms_.size()); }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;  // sorted
  std::vector<double> idf_;
};

struct FeatureVector {
  std::string video_id;
  Eigen::SparseVector<double> weights;
  int label = -1;
};

// tf * idf per in-vocabulary term; out-of-vocabulary terms are dropped.
// Optionally scaled to unit L2 norm (zero vectors stay zero).
std::vector<FeatureVector> vectorize(std::span<const TermDocument> docs,
                                     const Vocabulary& vocab,
                                     bool l2_normalize = true);

// Stacks feature vectors into a row-major design matrix.
Eigen::SparseMatrix<double, Eigen::RowMajor> design_matrix(
    std::span<const FeatureVector> features, Eigen::Index dim);

// Mean binary logistic loss plus (l2 / 2) * |w|^2, and its gradient.
struct LogisticObjective {
  double loss = 0;
  Eigen::VectorXd grad_weights;
  double grad_bias = 0;
};

LogisticObjective logistic_objective(
    const Eigen::SparseMatrix<double, Eigen::RowMajor>& x,
    const Eigen::VectorXd& targets, const Eigen::VectorXd& weights,
    double bias, double l2 = 0.0);

// One-vs-rest linear model; row c of `weights` scores classes[c].
struct LinearModel {
  std::vector<int> classes;
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

struct TrainOptions {
  int epochs = 300;
  double learning_rate = 0.5;
  double l2 = 0.0;
};

// Full-batch gradient descent from zero weights, one binary problem per
// class present in the labels. Throws Error when fewer than two classes
// are present.
LinearModel train(std::span<const FeatureVector> features, Eigen::Index dim,
                  const TrainOptions& opts = {});

// Linear scores w_c . x + b_c, in model.classes order.
Eigen::VectorXd predict(const LinearModel& model, const FeatureVector& feature);

// Precision-at-rank averaged over the relevant positions; nullopt when
// nothing is relevant.
std::optional<double> average_precision(const std::vector<bool>& relevance);

struct RankedList {
  int category = 0;
  std::vector<std::string> ids;
};

struct MapResult {
  double map = 0;  // 0 when every category was skipped
  std::map<int, double> per_category;
  std::vector<int> skipped;  // categories without relevant items
};

// Each list must be a permutation of the ids in `truth`.
MapResult mean_average_precision(std::span<const RankedList> rankings,
                                 const std::map<std::string, int>& truth);

struct EvalOptions {
  TrainOptions train;
  double train_fraction = 0.7;
};

// Deterministic split on the FNV-1a hash of the id.
bool in_training_split(std::string_view id, double train_fraction = 0.7);

struct ArmReport {
  TagSource source = TagSource::raw;
  Eigen::Index vocabulary_size = 0;
  MapResult result;
};

struct EvalReport {
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<int> categories;
  ArmReport raw;
  ArmReport enriched;
};

// Trains and scores one classifier per tag source on labeled videos.
// Throws Error when fewer than two categories are labeled or either split
// is empty.
EvalReport evaluate(std::span<const Video> videos, const RecommendationMap& recs,
                    const EvalOptions& opts = {});

void write_report_json(std::ostream& out, const EvalReport& report);
void write_report_table(std::ostream& out, const EvalReport& report);

}  // namespace ctextr

#endif  // CTEXTR_EVAL_HPP_
