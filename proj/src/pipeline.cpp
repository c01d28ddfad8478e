#include "ctextr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ctextr/graph.hpp"

namespace ctextr {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void require_file(const std::filesystem::path& path, const char* what) {
  if (path.empty()) throw Error(std::string("no ") + what + " file given");
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(std::string(what) + " file not found: " + path.string());
  }
}

std::unique_ptr<SearchBackend> make_backend(const PipelineConfig& config) {
  if (config.backend == BackendKind::remote) {
    return std::make_unique<RemoteBackend>(config.remote_endpoint);
  }
  const auto index_file = config.index_path();
  if (std::filesystem::is_regular_file(index_file)) {
    return std::make_unique<OfflineIndex>(OfflineIndex::load(index_file));
  }
  if (!config.corpus.empty()) {
    require_file(config.corpus, "corpus");
    return std::make_unique<OfflineIndex>(OfflineIndex::build(load_documents(config.corpus)));
  }
  throw Error("index file not found: " + index_file.string());
}

}  // namespace

std::filesystem::path PipelineConfig::index_path() const {
  return index.empty() ? output_dir / "index.json" : index;
}

std::filesystem::path PipelineConfig::recommendations_path() const {
  return recommendations.empty() ? output_dir / "recommendations.jsonl" : recommendations;
}

std::filesystem::path PipelineConfig::report_path() const {
  return report.empty() ? output_dir / "eval_report.json" : report;
}

void PipelineConfig::validate() const {
  if (!(alpha > 0 && alpha < 1)) throw Error("alpha must lie in (0, 1)");
  if (!(tol > 0)) throw Error("tol must be > 0");
  if (max_iter < 1) throw Error("max-iter must be >= 1");
  if (k < 1) throw Error("k must be >= 1");
  if (top_results < 1) throw Error("top-results must be >= 1");
  if (min_entities < 1) throw Error("min-entities must be >= 1");
  if (workers < 1) throw Error("workers must be >= 1");
  if (backend == BackendKind::remote && remote_endpoint.empty()) {
    throw Error("remote backend needs an endpoint");
  }
  if (epochs < 0 || !(learning_rate > 0)) {
    throw Error("epochs must be >= 0 and learning rate > 0");
  }
}

VideoOutcome run_video(const Video& video, std::span<const Video> collection,
                       const SearchBackend& backend, const Gazetteer& gaz,
                       const Lexicon& lex, const PipelineConfig& config) {
  VideoOutcome out;
  out.video_id = video.id;
  try {
    const auto related = resolve_related(video, collection);
    out.query = construct_query(video, related, gaz, lex, config.min_entities);
    const auto results = search(backend, out.query, config.top_results);
    out.results = results.size();
    out.resources = same_context_filter(results, out.query);
    const auto context = build_context(out.resources, gaz, lex);
    const auto graph = build_graph(std::span<const ContextDocument>(context));
    const auto excluded = excluded_forms(
        video, gaz, lex, config.exclude_query_entities ? &out.query : nullptr);
    if (graph.size() == 0) {
      out.recommendation = recommend(ScoreVector<double>{}, graph, video, config.k, excluded);
    } else {
      const auto scores = significance<double>(
          graph, SignificanceOptions<double>{config.alpha, config.tol, config.max_iter});
      out.recommendation = recommend(scores, graph, video, config.k, excluded);
    }
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
    out.no_material = out.error == "no query material";
  }
  return out;
}

std::vector<VideoOutcome> run_all(std::span<const Video> videos,
                                  const SearchBackend& backend,
                                  const Gazetteer& gaz, const Lexicon& lex,
                                  const PipelineConfig& config) {
  std::vector<VideoOutcome> outcomes(videos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < videos.size(); i = next++) {
      outcomes[i] = run_video(videos[i], videos, backend, gaz, lex, config);
    }
  };
  const std::size_t n_threads = std::min(config.workers, std::max<std::size_t>(videos.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return outcomes;
}

RunSummary summarize(std::span<const VideoOutcome> outcomes) {
  RunSummary s;
  std::size_t resources = 0;
  for (const auto& o : outcomes) {
    ++s.processed;
    if (o.ok) {
      ++s.succeeded;
      resources += o.resources.size();
    } else if (o.no_material) {
      ++s.no_material;
    } else {
      ++s.failed;
    }
  }
  if (s.succeeded > 0) {
    s.mean_resources = static_cast<double>(resources) / static_cast<double>(s.succeeded);
  }
  return s;
}

std::string format_outcome(const VideoOutcome& o) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : o.recommendation.items) {
    items.push_back({{"tag", item.tag}, {"score", item.score}});
  }
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& r : o.resources) forms.push_back(std::string(to_string(r.form)));
  const nlohmann::json rec = {{"video_id", o.video_id},
                              {"query", o.query.folded_forms()},
                              {"results", o.results},
                              {"resources", o.resources.size()},
                              {"resource_forms", forms},
                              {"recommended", items}};
  return rec.dump();
}

RecommendationMap read_recommendations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  RecommendationMap out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_whitespace(line).empty()) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      auto& tags = out[rec.at("video_id").get<std::string>()];
      for (const auto& item : rec.at("recommended")) {
        tags.push_back(item.at("tag").get<std::string>());
      }
    } catch (const nlohmann::json::exception&) {
      throw Error("line " + std::to_string(line_no) + ": malformed recommendation record");
    }
  }
  return out;
}

int cmd_index(const PipelineConfig& config, std::ostream& log) {
  try {
    config.validate();
    require_file(config.corpus, "corpus");
    const auto index = OfflineIndex::build(load_documents(config.corpus));
    const auto path = config.index_path();
    auto out = open_output(path);
    index.write(out);
    log << "index: " << index.documents().size() << " documents, "
        << index.term_count() << " terms -> " << path.string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFatal;
  }
}

int cmd_recommend(const PipelineConfig& config, std::ostream& log) {
  std::vector<VideoOutcome> outcomes;
  try {
    config.validate();
    require_file(config.videos, "videos");
    require_file(config.lexicon, "lexicon");
    require_file(config.gazetteer, "gazetteer");
    const auto videos = load_videos(config.videos);
    const auto lex = load_lexicon(config.lexicon);
    const auto gaz = load_gazetteer(config.gazetteer);
    const auto backend = make_backend(config);
    log << "recommend: " << videos.size() << " videos, lexicon " << lex.pos_entries()
        << " pos / " << lex.ne_entries() << " ne entries, gazetteer " << gaz.size()
        << " entries\n";

    outcomes = run_all(videos, *backend, gaz, lex, config);
    auto out = open_output(config.recommendations_path());
    for (const auto& o : outcomes) {
      if (o.ok) {
        out << format_outcome(o) << '\n';
        log << "[video=" << o.video_id << "] query=\"" << o.query.text()
            << "\" results=" << o.results << " resources=" << o.resources.size()
            << " recommended=" << o.recommendation.items.size() << '\n';
      } else {
        log << "[video=" << o.video_id << "] skipped: " << o.error << '\n';
      }
    }
    if (!out) throw Error("failed writing " + config.recommendations_path().string());
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFatal;
  }

  const auto s = summarize(outcomes);
  log << "summary: processed=" << s.processed << " succeeded=" << s.succeeded
      << " no_material=" << s.no_material << " failed=" << s.failed
      << " mean_resources=" << std::fixed << std::setprecision(3) << s.mean_resources
      << '\n';
  return s.succeeded == s.processed ? kExitOk : kExitPartial;
}

int cmd_eval(const PipelineConfig& config, std::ostream& out, std::ostream& log) {
  try {
    config.validate();
    require_file(config.videos, "videos");
    const auto videos = load_videos(config.videos);
    const auto rec_path = config.recommendations_path();
    require_file(rec_path, "recommendations");
    const auto recs = read_recommendations(rec_path);

    EvalOptions opts;
    opts.train.epochs = config.epochs;
    opts.train.learning_rate = config.learning_rate;
    const auto report = evaluate(videos, recs, opts);

    auto file = open_output(config.report_path());
    write_report_json(file, report);
    write_report_table(out, report);
    log << "eval: report -> " << config.report_path().string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFatal;
  }
}

}  // namespace ctextr
