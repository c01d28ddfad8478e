#ifndef CTEXTR_PIPELINE_HPP_
#define CTEXTR_PIPELINE_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ctextr/corpus.hpp"
#include "ctextr/eval.hpp"
#include "ctextr/query.hpp"
#include "ctextr/recommend.hpp"
#include "ctextr/retrieval.hpp"

namespace ctextr {

enum class BackendKind { offline, remote };

struct PipelineConfig {
  std::filesystem::path videos;
  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path gazetteer;
  std::filesystem::path output_dir = ".";
  // Empty paths fall back to files inside output_dir.
  std::filesystem::path index;
  std::filesystem::path recommendations;
  std::filesystem::path report;

  double alpha = 0.85;
  double tol = 1e-10;
  int max_iter = 200;
  std::size_t k = 10;
  std::size_t min_entities = 3;
  std::size_t top_results = 10;
  bool exclude_query_entities = true;
  BackendKind backend = BackendKind::offline;
  std::string remote_endpoint;
  std::size_t workers = 1;

  int epochs = 300;
  double learning_rate = 0.5;

  std::filesystem::path index_path() const;
  std::filesystem::path recommendations_path() const;
  std::filesystem::path report_path() const;

  // Throws Error naming the first violated bound.
  void validate() const;
};

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitFatal = 2;

struct VideoOutcome {
  std::string video_id;
  bool ok = false;
  bool no_material = false;
  std::string error;
  Query query;
  std::size_t results = 0;
  std::vector<SameCtextResource> resources;
  Recommendation recommendation;
};

// query -> search -> same-context filter -> context -> graph -> scores ->
// recommendation, for one video. Failures are reported in the outcome.
VideoOutcome run_video(const Video& video, std::span<const Video> collection,
                       const SearchBackend& backend, const Gazetteer& gaz,
                       const Lexicon& lex, const PipelineConfig& config);

struct RunSummary {
  std::size_t processed = 0;
  std::size_t succeeded = 0;
  std::size_t no_material = 0;
  std::size_t failed = 0;
  double mean_resources = 0;  // over succeeded videos
};

// Runs every video, `config.workers` at a time. Outcomes come back in
// input order whatever the completion order.
std::vector<VideoOutcome> run_all(std::span<const Video> videos,
                                  const SearchBackend& backend,
                                  const Gazetteer& gaz, const Lexicon& lex,
                                  const PipelineConfig& config);

RunSummary summarize(std::span<const VideoOutcome> outcomes);

// One JSON line per successful video.
std::string format_outcome(const VideoOutcome& outcome);
RecommendationMap read_recommendations(const std::filesystem::path& path);

// Subcommands. Diagnostics go to `log`, one line each, prefixed with the
// video id where there is one. Return one of the kExit* codes.
int cmd_index(const PipelineConfig& config, std::ostream& log);
int cmd_recommend(const PipelineConfig& config, std::ostream& log);
int cmd_eval(const PipelineConfig& config, std::ostream& out, std::ostream& log);

}  // namespace ctextr

#endif  // CTEXTR_PIPELINE_HPP_
