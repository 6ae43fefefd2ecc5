#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"
#include "salience/term_stats.hpp"

namespace salience {

// Words representing a user's interest, with their averaged G2 scores.
struct Topic {
  std::map<std::string, double, std::less<>> words;
  double threshold_sigma = 2.5;
  std::vector<std::string> source_doc_ids;

  double score(std::string_view word) const;
  double max_score() const;
};

struct KeywordMap {
  std::string doc_id;
  std::map<std::string, double, std::less<>> weights;  // all > 0

  bool contains(std::string_view word) const { return weights.find(word) != weights.end(); }
  double weight(std::string_view word) const;
};

struct TopicParams {
  std::size_t top_k_per_doc = 50;
  double threshold_sigma = 2.5;
};

// mean + threshold_sigma * population stddev of the pooled scores.
double topic_cutoff(std::span<const double> scores, double threshold_sigma);

// Pools each interest document's top content words by G2, averages repeated
// words, and keeps those strictly above mean + sigma * stddev (population).
// Throws NumericError when nothing survives.
Topic build_topic_centroid(std::span<const Document* const> interest_docs, const CorpusStats& stats,
                           const TopicParams& params = {});

struct ActivationParams {
  double decay = 0.9;
  std::size_t iterations = 2;
};

// Max-propagation with decay over co-occurrence and synonym links among the
// document's content words, seeded with topic scores.
KeywordMap spread_activation(const Topic& topic, const Document& doc, const CooccurrenceTable& table,
                             const SynonymLexicon& lex, const ActivationParams& params = {});

// Average keyword activation over each sentence's content tokens.
std::vector<double> keyword_sentence_weights(const Document& doc, const KeywordMap& keywords);

// Top ceil(c*N) sentences by average activation; ties go to earlier sentences.
std::vector<bool> generate_user_focused_labels(const Document& doc, const KeywordMap& keywords,
                                               double compression);

// Topic file: TSV `word score`, score descending. Keyword map: TSV `word activation`.
void save_topic(const Topic& topic, const std::filesystem::path& path);
Topic load_topic(const std::filesystem::path& path);
void save_keywords(const KeywordMap& keywords, const std::filesystem::path& path);
KeywordMap load_keywords(const std::filesystem::path& path, std::string doc_id);

// Plain-text list of document ids, one per line; '#' comments.
std::vector<std::string> load_interest_ids(const std::filesystem::path& path);

}  // namespace salience
