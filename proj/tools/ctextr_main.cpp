// ctextr: context-oriented tag recommendation for web videos.
//
//   ctextr index     --corpus docs.jsonl --out-dir run/
//   ctextr recommend --videos videos.jsonl --lexicon lex.txt --gazetteer gaz.txt --out-dir run/
//   ctextr eval      --videos videos.jsonl --out-dir run/
//
// Every option may also come from a key = value file given with --config;
// command-line flags take precedence.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ctextr/pipeline.hpp"

int main(int argc, char** argv) {
  ctextr::PipelineConfig config;
  std::string backend = "offline";

  CLI::App app{"Context-oriented web video tag recommendation"};
  app.set_config("--config", "", "Key = value configuration file");
  app.require_subcommand(1);

  app.add_option("--videos", config.videos, "Video records (JSON lines)");
  app.add_option("--corpus", config.corpus, "Document corpus (JSON lines)");
  app.add_option("--lexicon", config.lexicon, "Lexicon file (word|pos|ne)");
  app.add_option("--gazetteer", config.gazetteer, "Gazetteer file (one form per line)");
  app.add_option("--out-dir", config.output_dir, "Output directory")->capture_default_str();
  app.add_option("--index", config.index, "Index file (default <out-dir>/index.json)");
  app.add_option("--recommendations", config.recommendations,
                 "Recommendations file (default <out-dir>/recommendations.jsonl)");
  app.add_option("--report", config.report,
                 "Evaluation report (default <out-dir>/eval_report.json)");

  app.add_option("--alpha", config.alpha, "Damping factor")->capture_default_str();
  app.add_option("--tol", config.tol, "L1 convergence tolerance")->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "Iteration cap")->capture_default_str();
  app.add_option("--k", config.k, "Tags recommended per video")->capture_default_str();
  app.add_option("--min-entities", config.min_entities, "Minimum query entities")
      ->capture_default_str();
  app.add_option("--top-results", config.top_results, "Search results kept per query")
      ->capture_default_str();
  app.add_option("--exclude-query-entities", config.exclude_query_entities,
                 "Never recommend query entities")
      ->capture_default_str();
  app.add_option("--backend", backend, "Search backend")
      ->check(CLI::IsMember({"offline", "remote"}))
      ->capture_default_str();
  app.add_option("--remote-endpoint", config.remote_endpoint,
                 "Search endpoint for the remote backend");
  app.add_option("--workers", config.workers, "Videos processed in parallel")
      ->capture_default_str();
  app.add_option("--epochs", config.epochs, "Classifier training epochs")->capture_default_str();
  app.add_option("--lr", config.learning_rate, "Classifier learning rate")->capture_default_str();

  auto* index = app.add_subcommand("index", "Build the offline search index");
  auto* recommend = app.add_subcommand("recommend", "Recommend tags for every video");
  auto* eval = app.add_subcommand("eval", "Compare raw and enriched tags on categorization");
  for (auto* sub : {index, recommend, eval}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ctextr::kExitFatal;
  }
  config.backend = backend == "remote" ? ctextr::BackendKind::remote
                                       : ctextr::BackendKind::offline;

  if (*index) return ctextr::cmd_index(config, std::cerr);
  if (*recommend) return ctextr::cmd_recommend(config, std::cerr);
  return ctextr::cmd_eval(config, std::cout, std::cerr);
}
