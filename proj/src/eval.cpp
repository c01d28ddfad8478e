#include "ctextr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ctextr {
namespace {

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(TagSource source) {
  return source == TagSource::raw ? "raw" : "enriched";
}

std::vector<TermDocument> tag_documents(std::span<const Video> videos,
                                        TagSource source,
                                        const RecommendationMap& recs) {
  std::vector<TermDocument> docs;
  docs.reserve(videos.size());
  for (const auto& v : videos) {
    TermDocument d{v.id, {}, v.category.value_or(-1)};
    for (const auto& tag : v.raw_tags) d.terms.push_back(fold(tag));
    if (source == TagSource::enriched) {
      if (const auto it = recs.find(v.id); it != recs.end()) {
        for (const auto& tag : it->second) d.terms.push_back(fold(tag));
      }
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

Vocabulary Vocabulary::build(std::span<const TermDocument> training) {
  std::map<std::string, std::size_t> df;
  for (const auto& d : training) {
    const std::set<std::string> unique(d.terms.begin(), d.terms.end());
    for (const auto& t : unique) ++df[t];
  }
  Vocabulary vocab;
  const double n = static_cast<double>(training.size());
  for (const auto& [term, count] : df) {
    vocab.terms_.push_back(term);
    vocab.idf_.push_back(std::log((n + 1.0) / (static_cast<double>(count) + 1.0)) + 1.0);
  }
  return vocab;
}

Vocabulary Vocabulary::with_idf(std::vector<std::string> terms,
                                std::vector<double> idf) {
  if (terms.size() != idf.size()) throw Error("terms and idf differ in length");
  std::vector<std::size_t> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return terms[a] < terms[b]; });
  Vocabulary vocab;
  for (const std::size_t i : order) {
    if (!vocab.terms_.empty() && vocab.terms_.back() == terms[i]) {
      throw Error("duplicate vocabulary term '" + terms[i] + "'");
    }
    vocab.terms_.push_back(terms[i]);
    vocab.idf_.push_back(idf[i]);
  }
  return vocab;
}

std::optional<Eigen::Index> Vocabulary::index_of(std::string_view term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<Eigen::Index>(it - terms_.begin());
}

std::vector<FeatureVector> vectorize(std::span<const TermDocument> docs,
                                     const Vocabulary& vocab, bool l2_normalize) {
  std::vector<FeatureVector> out;
  out.reserve(docs.size());
  for (const auto& d : docs) {
    std::map<Eigen::Index, double> tf;
    for (const auto& t : d.terms) {
      if (const auto col = vocab.index_of(t)) tf[*col] += 1.0;
    }
    FeatureVector f{d.id, Eigen::SparseVector<double>(vocab.size()), d.label};
    f.weights.reserve(static_cast<Eigen::Index>(tf.size()));
    for (const auto& [col, count] : tf) f.weights.insert(col) = count * vocab.idf(col);
    if (l2_normalize) {
      const double norm = f.weights.norm();
      if (norm > 0) f.weights /= norm;
    }
    out.push_back(std::move(f));
  }
  return out;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> design_matrix(
    std::span<const FeatureVector> features, Eigen::Index dim) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < features.size(); ++r) {
    for (Eigen::SparseVector<double>::InnerIterator it(features[r].weights); it; ++it) {
      if (it.index() >= dim) throw Error("feature index out of vocabulary range");
      triplets.emplace_back(static_cast<Eigen::Index>(r), it.index(), it.value());
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> x(
      static_cast<Eigen::Index>(features.size()), dim);
  x.setFromTriplets(triplets.begin(), triplets.end());
  return x;
}

LogisticObjective logistic_objective(
    const Eigen::SparseMatrix<double, Eigen::RowMajor>& x,
    const Eigen::VectorXd& targets, const Eigen::VectorXd& weights,
    double bias, double l2) {
  const Eigen::Index m = x.rows();
  if (m == 0) throw Error("no training rows");
  const Eigen::VectorXd z = (x * weights).array() + bias;
  Eigen::VectorXd residual(m);
  double loss = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    loss += softplus(z(i)) - targets(i) * z(i);
    residual(i) = sigmoid(z(i)) - targets(i);
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  LogisticObjective out;
  out.loss = loss * inv_m + 0.5 * l2 * weights.squaredNorm();
  out.grad_weights = (x.transpose() * residual) * inv_m + l2 * weights;
  out.grad_bias = residual.sum() * inv_m;
  return out;
}

LinearModel train(std::span<const FeatureVector> features, Eigen::Index dim,
                  const TrainOptions& opts) {
  std::set<int> classes;
  for (const auto& f : features) {
    if (f.label >= 0) classes.insert(f.label);
  }
  if (classes.size() < 2) throw Error("training data needs at least two categories");
  if (opts.epochs < 0 || !(opts.learning_rate > 0)) {
    throw Error("epochs must be >= 0 and learning rate > 0");
  }

  // Unlabeled rows cannot be targets; keep only labeled ones.
  std::vector<FeatureVector> labeled;
  for (const auto& f : features) {
    if (f.label >= 0) labeled.push_back(f);
  }
  const auto x = design_matrix(labeled, dim);

  LinearModel model;
  model.classes.assign(classes.begin(), classes.end());
  const auto c = static_cast<Eigen::Index>(model.classes.size());
  model.weights = Eigen::MatrixXd::Zero(c, dim);
  model.bias = Eigen::VectorXd::Zero(c);

  for (Eigen::Index k = 0; k < c; ++k) {
    Eigen::VectorXd targets(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      targets(i) = labeled[static_cast<std::size_t>(i)].label == model.classes[k] ? 1.0 : 0.0;
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    double b = 0;
    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
      const auto g = logistic_objective(x, targets, w, b, opts.l2);
      w -= opts.learning_rate * g.grad_weights;
      b -= opts.learning_rate * g.grad_bias;
    }
    model.weights.row(k) = w.transpose();
    model.bias(k) = b;
  }
  return model;
}

Eigen::VectorXd predict(const LinearModel& model, const FeatureVector& feature) {
  if (feature.weights.size() != model.weights.cols()) {
    throw Error("feature dimension does not match the model");
  }
  Eigen::VectorXd scores = model.bias;
  for (Eigen::SparseVector<double>::InnerIterator it(feature.weights); it; ++it) {
    scores += it.value() * model.weights.col(it.index());
  }
  return scores;
}

std::optional<double> average_precision(const std::vector<bool>& relevance) {
  std::size_t hits = 0;
  double sum = 0;
  for (std::size_t i = 0; i < relevance.size(); ++i) {
    if (relevance[i]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  if (hits == 0) return std::nullopt;
  return sum / static_cast<double>(hits);
}

MapResult mean_average_precision(std::span<const RankedList> rankings,
                                 const std::map<std::string, int>& truth) {
  MapResult result;
  double sum = 0;
  for (const auto& list : rankings) {
    if (list.ids.size() != truth.size()) {
      throw Error("ranked list is not a permutation of the evaluated ids");
    }
    std::unordered_set<std::string_view> seen;
    std::vector<bool> relevance;
    relevance.reserve(list.ids.size());
    for (const auto& id : list.ids) {
      const auto it = truth.find(id);
      if (it == truth.end() || !seen.insert(id).second) {
        throw Error("ranked list is not a permutation of the evaluated ids");
      }
      relevance.push_back(it->second == list.category);
    }
    const auto ap = average_precision(relevance);
    if (!ap) {
      result.skipped.push_back(list.category);
      continue;
    }
    result.per_category[list.category] = *ap;
    sum += *ap;
  }
  if (!result.per_category.empty()) {
    result.map = sum / static_cast<double>(result.per_category.size());
  }
  return result;
}

bool in_training_split(std::string_view id, double train_fraction) {
  return static_cast<double>(fnv1a(id) % 1000) < train_fraction * 1000.0;
}

namespace {

ArmReport run_arm(std::span<const Video> train_videos,
                  std::span<const Video> test_videos, TagSource source,
                  const RecommendationMap& recs, const EvalOptions& opts) {
  const auto train_docs = tag_documents(train_videos, source, recs);
  const auto test_docs = tag_documents(test_videos, source, recs);
  const auto vocab = Vocabulary::build(train_docs);
  const auto model = train(vectorize(train_docs, vocab), vocab.size(), opts.train);
  const auto test_features = vectorize(test_docs, vocab);

  std::map<std::string, int> truth;
  for (const auto& f : test_features) truth[f.video_id] = f.label;

  std::vector<Eigen::VectorXd> scores;
  scores.reserve(test_features.size());
  for (const auto& f : test_features) scores.push_back(predict(model, f));

  std::vector<RankedList> rankings;
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    std::vector<std::size_t> order(test_features.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto k = static_cast<Eigen::Index>(c);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a](k) != scores[b](k)) return scores[a](k) > scores[b](k);
      return test_features[a].video_id < test_features[b].video_id;
    });
    RankedList list{model.classes[c], {}};
    for (const std::size_t i : order) list.ids.push_back(test_features[i].video_id);
    rankings.push_back(std::move(list));
  }
  return ArmReport{source, vocab.size(), mean_average_precision(rankings, truth)};
}

}  // namespace

EvalReport evaluate(std::span<const Video> videos, const RecommendationMap& recs,
                    const EvalOptions& opts) {
  std::vector<Video> train_videos;
  std::vector<Video> test_videos;
  std::set<int> categories;
  for (const auto& v : videos) {
    if (!v.category) continue;
    categories.insert(*v.category);
    (in_training_split(v.id, opts.train_fraction) ? train_videos : test_videos).push_back(v);
  }
  if (categories.size() < 2) throw Error("evaluation needs at least two labeled categories");
  if (train_videos.empty() || test_videos.empty()) {
    throw Error("train/test split left an empty side");
  }

  EvalReport report;
  report.train_size = train_videos.size();
  report.test_size = test_videos.size();
  report.categories.assign(categories.begin(), categories.end());
  report.raw = run_arm(train_videos, test_videos, TagSource::raw, recs, opts);
  report.enriched = run_arm(train_videos, test_videos, TagSource::enriched, recs, opts);
  return report;
}

void write_report_json(std::ostream& out, const EvalReport& report) {
  auto arm = [](const ArmReport& a) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [c, ap] : a.result.per_category) {
      per[std::string(kCategories[static_cast<std::size_t>(c)])] = ap;
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const int c : a.result.skipped) {
      skipped.push_back(std::string(kCategories[static_cast<std::size_t>(c)]));
    }
    return nlohmann::json{{"map", a.result.map},
                          {"per_category_ap", per},
                          {"skipped_categories", skipped},
                          {"vocabulary_size", a.vocabulary_size}};
  };
  const nlohmann::json root = {{"train_size", report.train_size},
                               {"test_size", report.test_size},
                               {"raw", arm(report.raw)},
                               {"enriched", arm(report.enriched)}};
  out << root.dump(2) << '\n';
}

void write_report_table(std::ostream& out, const EvalReport& report) {
  auto cell = [](const ArmReport& a, int c) -> std::string {
    const auto it = a.result.per_category.find(c);
    if (it == a.result.per_category.end()) return "-";
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << it->second;
    return s.str();
  };
  out << "train=" << report.train_size << " test=" << report.test_size << '\n';
  out << std::left << std::setw(24) << "category" << std::setw(10) << "raw"
      << "enriched\n";
  for (const int c : report.categories) {
    out << std::setw(24) << kCategories[static_cast<std::size_t>(c)]
        << std::setw(10) << cell(report.raw, c) << cell(report.enriched, c) << '\n';
  }
  out << std::setw(24) << "MAP" << std::fixed << std::setprecision(4)
      << std::setw(10) << report.raw.result.map << report.enriched.result.map << '\n';
}

}  // namespace ctextr
