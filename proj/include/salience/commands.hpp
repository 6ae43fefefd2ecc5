#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "salience/evaluation.hpp"
#include "salience/learners.hpp"
#include "salience/pipeline.hpp"
#include "salience/synth.hpp"

namespace salience {

// Settings shared by every pipeline command.
struct RunConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path stoplist_path;  // empty: built-in English list
  std::filesystem::path synonyms_path;  // empty: no synonym links
  double compression = 0.2;
  LearnerKind learner = LearnerKind::Tree;
  Mode mode = Mode::Generic;
  std::optional<std::filesystem::path> interest_file;
  std::uint64_t seed = 0;
  double neg_ratio = kDefaultNegRatio;
  std::size_t folds = 10;
  bool balance_test = false;
  CooccurrenceParams cooc;
  ActivationParams activation;
  TopicParams topic;
  LearnerParams learner_params;
  std::filesystem::path output_dir = "out";

  // Throws ConfigError: compression outside (0,1], user mode without an
  // interest file, non-positive ratios.
  void validate() const;
};

// Artifact locations inside the output directory.
struct Artifacts {
  std::filesystem::path dir;

  std::filesystem::path docs() const { return dir / "docs"; }
  std::filesystem::path stoplist() const { return dir / "stoplist.txt"; }
  std::filesystem::path synonyms() const { return dir / "synonyms.txt"; }
  std::filesystem::path stats() const { return dir / "stats.tsv"; }
  std::filesystem::path cooccurrence() const { return dir / "cooccurrence.tsv"; }
  std::filesystem::path topic() const { return dir / "topic.tsv"; }
  std::filesystem::path keywords() const { return dir / "keywords"; }
  std::filesystem::path vectors() const { return dir / "vectors.tsv"; }
  std::filesystem::path train() const { return dir / "train.tsv"; }
  std::filesystem::path model() const { return dir / "model.json"; }
  std::filesystem::path rules() const { return dir / "rules.txt"; }
  std::filesystem::path report() const { return dir / "report.json"; }
  std::filesystem::path report_tsv() const { return dir / "report.tsv"; }
  std::filesystem::path curve() const { return dir / "learning_curve.tsv"; }
  std::filesystem::path sweep() const { return dir / "sweep.json"; }
  std::filesystem::path summaries() const { return dir / "summaries"; }
};

// Validates the corpus and stores normalized copies of the documents, the
// stoplist and the synonym lexicon. Returns the number of documents.
std::size_t cmd_ingest(const RunConfig& config);
// Corpus counts and the co-occurrence table.
void cmd_stats(const RunConfig& config);
// Topic centroid of the interest set plus one keyword map per document.
Topic cmd_topic(const RunConfig& config);
// All labeled vectors, and the deduplicated, balanced training set.
LabeledSet cmd_label(const RunConfig& config);
Model cmd_train(const RunConfig& config, const std::optional<std::filesystem::path>& model_path = {});
EvalReport cmd_evaluate(const RunConfig& config, bool learning_curve = false);
SweepResult cmd_sweep(const RunConfig& config, const std::vector<double>& compressions);

enum class SummaryFormat { Text, Json };

// Summarizes the given document files, or every ingested document when none
// are given; returns the written paths.
std::vector<std::filesystem::path> cmd_summarize(const RunConfig& config,
                                                 const std::vector<std::filesystem::path>& inputs,
                                                 SummaryFormat format,
                                                 const std::optional<std::filesystem::path>& model_path = {});

SynthCheck cmd_synth(const SynthParams& params, const std::filesystem::path& dir);

}  // namespace salience
