#include <iostream>

#include "CLI11.hpp"
#include "salience/commands.hpp"
#include "salience/error.hpp"
#include "salience/format.hpp"

using namespace salience;

namespace {

void print_metrics(const std::string& label, const Metrics& mean, const Metrics& stddev) {
  std::cout << label << " accuracy " << format_double(mean.accuracy) << " (sd " << format_double(stddev.accuracy)
            << ")  precision " << format_double(mean.precision) << "  recall " << format_double(mean.recall)
            << "  F " << format_double(mean.f_score) << " (sd " << format_double(stddev.f_score) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trainable extractive summarizer"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "File of `key = value` lines supplying option defaults");

  RunConfig config;
  std::string interest;
  bool quiet = false;

  std::string learner = "tree";
  std::string mode = "generic";

  app.add_option("--corpus", config.corpus_dir, "Directory of document files");
  app.add_option("--stoplist", config.stoplist_path, "Stoplist file (default: built-in English list)");
  app.add_option("--synonyms", config.synonyms_path, "Synonym lexicon, one synset per line");
  app.add_option("--compression", config.compression, "Fraction of sentences to label or extract")
      ->capture_default_str();
  app.add_option("--learner", learner, "linear, tree or covering")
      ->check(CLI::IsMember({"linear", "tree", "covering"}))
      ->capture_default_str();
  app.add_option("--mode", mode, "generic or user")->check(CLI::IsMember({"generic", "user"}))->capture_default_str();
  app.add_option("--interest", interest, "File listing the interest documents (user mode)");
  app.add_option("--seed", config.seed, "Seed for fold splits and negative sampling")->capture_default_str();
  app.add_option("--neg-ratio", config.neg_ratio, "Sampled negatives per positive")->capture_default_str();
  app.add_option("--folds", config.folds, "Cross-validation folds")->capture_default_str();
  app.add_flag("--balance-test", config.balance_test, "Balance test folds like the training data");
  app.add_option("--cooc-window", config.cooc.window, "Co-occurrence window in content tokens")
      ->capture_default_str();
  app.add_option("--cooc-min-count", config.cooc.min_count, "Pairs must occur more often than this")
      ->capture_default_str();
  app.add_option("--cooc-min-score", config.cooc.min_score, "Mutual information must exceed this")
      ->capture_default_str();
  app.add_option("--decay", config.activation.decay, "Spreading-activation decay")->capture_default_str();
  app.add_option("--iterations", config.activation.iterations, "Spreading-activation iterations")
      ->capture_default_str();
  app.add_option("--topic-sigma", config.topic.threshold_sigma, "Topic words exceed mean + sigma * sd")
      ->capture_default_str();
  app.add_option("--topic-top-k", config.topic.top_k_per_doc, "Words pooled per interest document")
      ->capture_default_str();
  app.add_option("--ridge", config.learner_params.ridge, "Linear learner ridge term")->capture_default_str();
  app.add_option("--min-leaf", config.learner_params.min_leaf, "Tree learner minimum leaf size")
      ->capture_default_str();
  app.add_option("--cf", config.learner_params.cf, "Tree rule pruning confidence")->capture_default_str();
  app.add_option("--beam", config.learner_params.beam, "Covering learner beam width")->capture_default_str();
  app.add_option("--max-fp-rate", config.learner_params.max_fp_rate, "Covering learner false-positive budget")
      ->capture_default_str();
  app.add_option("--output-dir", config.output_dir, "Directory for all artifacts")->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress warnings");

  auto* ingest = app.add_subcommand("ingest", "Validate and store the corpus");
  auto* stats = app.add_subcommand("stats", "Corpus statistics and co-occurrence table");
  auto* topic = app.add_subcommand("topic", "Topic centroid and per-document keywords");
  auto* label = app.add_subcommand("label", "Labeled feature vectors and the balanced training set");
  auto* train = app.add_subcommand("train", "Learn a model from the training set");
  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated evaluation");
  auto* sweep = app.add_subcommand("sweep", "Evaluation across compression rates");
  auto* summarize = app.add_subcommand("summarize", "Extract summaries with a trained model");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");

  std::string model_path;
  train->add_option("--model", model_path, "Model file (default: <output-dir>/model.json)");
  bool curve = false;
  evaluate->add_flag("--learning-curve", curve, "Also train on growing fractions of each training split");
  std::vector<double> compressions = {0.05, 0.10, 0.20, 0.30};
  sweep->add_option("--compressions", compressions, "Compression rates")->delimiter(',')->capture_default_str();
  std::vector<std::string> inputs;
  std::string format = "text";
  summarize->add_option("--model", model_path, "Model file (default: <output-dir>/model.json)");
  summarize->add_option("--input", inputs, "Document files (default: every ingested document)");
  summarize->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  SynthParams synth_params;
  std::string profile = "lead-bias";
  std::string synth_dir = "synth";
  synth->add_option("--profile", profile, "lead-bias, keyword-planted or mixed")
      ->check(CLI::IsMember({"lead-bias", "keyword-planted", "mixed"}));
  synth->add_option("--n-docs", synth_params.n_docs, "Number of documents")->capture_default_str();
  synth->add_option("--interest-docs", synth_params.n_interest, "Interest documents (keyword-planted)")
      ->capture_default_str();
  synth->add_option("--dir", synth_dir, "Destination directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_warnings_enabled(!quiet);
    config.learner = *parse_learner(learner);
    config.mode = *parse_mode(mode);
    if (!interest.empty()) config.interest_file = interest;
    const std::optional<std::filesystem::path> model =
        model_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(model_path);

    if (ingest->parsed()) {
      std::cout << "ingested " << cmd_ingest(config) << " documents into " << config.output_dir.string() << '\n';
    } else if (stats->parsed()) {
      cmd_stats(config);
      std::cout << "wrote corpus statistics to " << config.output_dir.string() << '\n';
    } else if (topic->parsed()) {
      const auto t = cmd_topic(config);
      std::cout << "topic of " << t.words.size() << " words from " << t.source_doc_ids.size()
                << " interest documents\n";
    } else if (label->parsed()) {
      const auto set = cmd_label(config);
      std::cout << "labeled " << set.n_raw << " vectors; training set " << set.vectors.size() << " ("
                << set.n_positive << " positive, " << set.n_negative_sampled << " negative)\n";
    } else if (train->parsed()) {
      const auto m = cmd_train(config, model);
      if (const auto* rules = std::get_if<RuleSet>(&m)) {
        std::cout << pretty_print(*rules);
      } else {
        std::cout << pretty_print(std::get<LinearModel>(m));
      }
    } else if (evaluate->parsed()) {
      const auto report = cmd_evaluate(config, curve);
      print_metrics(std::string(to_string(config.learner)) + "/" + std::string(to_string(config.mode)),
                    report.mean, report.stddev);
    } else if (sweep->parsed()) {
      const auto result = cmd_sweep(config, compressions);
      for (std::size_t i = 0; i < result.reports.size(); ++i) {
        print_metrics("c=" + format_double(compressions[i]), result.reports[i].mean, result.reports[i].stddev);
      }
      std::cout << "F range " << format_double(result.f_range) << '\n';
    } else if (summarize->parsed()) {
      const auto written =
          cmd_summarize(config, std::vector<std::filesystem::path>(inputs.begin(), inputs.end()),
                        format == "json" ? SummaryFormat::Json : SummaryFormat::Text, model);
      std::cout << "wrote " << written.size() << " summaries to " << (config.output_dir / "summaries").string()
                << '\n';
    } else if (synth->parsed()) {
      synth_params.profile = *parse_synth_profile(profile);
      synth_params.seed = config.seed;
      const auto check = cmd_synth(synth_params, synth_dir);
      std::cout << "wrote " << synth_params.n_docs << " " << profile << " documents to " << synth_dir << '\n';
      std::cout << "planted sentences match labeling in " << format_double(check.planted_fraction * 100)
                << "% of documents\n";
      if (check.keyword_fraction) {
        std::cout << "keyword sentences dominate keyword_count in " << format_double(*check.keyword_fraction * 100)
                  << "% of documents\n";
      }
      if (check.planted_fraction < 0.95 || check.keyword_fraction.value_or(1.0) < 0.95) {
        warn("self-check below 95%; the corpus may not exhibit its planted signal");
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Data);
  }
  return 0;
}
