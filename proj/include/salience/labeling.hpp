#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"
#include "salience/features.hpp"

namespace salience {

inline constexpr double kDefaultNegRatio = 214.0 / 182.0;

// Number of distinct shared content words plus the cosine of the two sides'
// tf.idf vectors. tf is relative to each side's most frequent content word;
// idf comes from the corpus. Symmetric in its arguments.
double text_similarity(std::span<const Sentence> side_a, std::span<const Sentence> side_b,
                       const CorpusStats& stats);

// Similarity of one source sentence to the whole abstract.
double sentence_abstract_similarity(const Sentence& sentence, std::span<const Sentence> abstract,
                                    const CorpusStats& stats);

// Top ceil(c*N) sentences by similarity to the abstract; ties go to earlier
// sentences. Throws DataError when the document has no (or an empty) abstract.
std::vector<bool> label_document(const Document& doc, const CorpusStats& stats, double compression);

struct LabeledSet {
  std::vector<FeatureVector> vectors;
  std::size_t n_raw = 0;
  std::size_t n_unique = 0;
  std::size_t n_positive = 0;
  std::size_t n_negative_sampled = 0;
  // Feature-identical vectors seen with both labels (kept once per label).
  std::size_t n_conflicting = 0;
  double neg_ratio = kDefaultNegRatio;
  std::uint64_t rng_seed = 0;
};

// True when the two vectors agree on every feature field present in either
// (doc_id, sent_index and label are ignored).
bool same_features(const FeatureVector& a, const FeatureVector& b);

// Removes duplicates (feature fields + label), keeps every unique positive and
// samples ceil(neg_ratio * positives) unique negatives without replacement.
// Throws NumericError when there are no positives.
LabeledSet deduplicate_and_balance(std::span<const FeatureVector> vectors, double neg_ratio,
                                   std::uint64_t seed);

// Feature TSV plus a JSON sidecar (<path>.meta.json) with the counts and seed.
void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path);
LabeledSet load_labeled_set(const std::filesystem::path& path);

}  // namespace salience
