#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salience/learners.hpp"
#include "salience/pipeline.hpp"

namespace salience {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  void add(Label predicted, Label actual);
  bool operator==(const Confusion&) const = default;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

// Precision, recall and F fall back to 0 when their denominators vanish.
// Throws DataError on an empty confusion matrix.
Metrics metrics(const Confusion& c);

struct FoldResult {
  std::size_t fold = 0;
  Confusion confusion;
  Metrics metrics;
  std::size_t n_train = 0;  // balanced training vectors
  std::vector<std::string> test_doc_ids;
};

struct IntegrityChecks {
  bool folds_disjoint = false;
  bool folds_cover_corpus = false;
  bool no_leakage = false;
};

struct EvalConfig {
  LearnerKind learner = LearnerKind::Tree;
  Mode mode = Mode::Generic;
  double compression = 0.2;
  std::uint64_t seed = 0;
  std::size_t folds = 10;
  double neg_ratio = kDefaultNegRatio;
  bool balance_test = false;
  LearnerParams learner_params;
};

struct EvalReport {
  EvalConfig config;
  std::vector<FoldResult> runs;
  Metrics mean;
  Metrics stddev;  // population
  IntegrityChecks integrity;
};

// Document-level k-fold protocol: documents are shuffled with the seed and cut
// into disjoint folds; each fold is tested on all of its vectors after training
// on the deduplicated, balanced vectors of the remaining folds.
EvalReport cross_validate(std::span<const PreparedDoc> docs, const EvalConfig& config);

// Prepares the corpus at config.compression / config.mode, then cross-validates.
EvalReport cross_validate(const CorpusResources& resources, const EvalConfig& config,
                          const FeatureOptions& features = {});

struct CurvePoint {
  double fraction = 0.0;
  Metrics mean;
};

// Trains on growing prefixes (10%..90%) of each fold's training documents.
std::vector<CurvePoint> learning_curve(std::span<const PreparedDoc> docs, const EvalConfig& config,
                                       std::span<const double> fractions);

struct SweepResult {
  std::vector<EvalReport> reports;
  // Rules learnt on the full corpus at each compression.
  std::vector<Model> models;
  // Overlap between models at adjacent compressions; empty for linear models.
  std::vector<double> adjacent_overlap;
  double f_range = 0.0;
};

SweepResult compression_sweep(const CorpusResources& resources, const EvalConfig& config,
                              std::span<const double> compressions, const FeatureOptions& features = {});

// Balanced training set over all prepared documents.
LabeledSet training_set(std::span<const PreparedDoc> docs, double neg_ratio, std::uint64_t seed);

std::string report_to_json(const EvalReport& report);
std::string report_to_tsv(const EvalReport& report);
std::string sweep_to_json(const SweepResult& sweep);

// Derives independent per-purpose seeds from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace salience
