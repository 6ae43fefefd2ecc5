#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"
#include "salience/features.hpp"
#include "salience/labeling.hpp"
#include "salience/term_stats.hpp"
#include "salience/user_focus.hpp"

namespace salience {

enum class Mode { Generic, User };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

// Everything feature extraction needs besides the document itself. The
// statistics are unsupervised and always cover the whole corpus.
struct CorpusResources {
  std::vector<Document> docs;
  CorpusStats stats;
  CooccurrenceTable table;
  SynonymLexicon lex;
  std::optional<Topic> topic;
  std::map<std::string, KeywordMap, std::less<>> keywords;  // per doc id, user mode only

  const Document* find(std::string_view doc_id) const;
};

CorpusResources build_resources(std::vector<Document> docs, SynonymLexicon lex,
                                const CooccurrenceParams& cooc = {});

// Builds the topic from the interest documents and spreads it over every
// document of the corpus.
void attach_user_interest(CorpusResources& resources, std::span<const std::string> interest_ids,
                          const TopicParams& topic_params = {}, const ActivationParams& activation = {});

// Keyword maps for every document from an already built topic.
void attach_topic(CorpusResources& resources, Topic topic, const ActivationParams& activation = {});

// Labeled feature vectors of one document.
struct PreparedDoc {
  std::string doc_id;
  std::vector<FeatureVector> vectors;
};

struct PrepareOptions {
  Mode mode = Mode::Generic;
  FeatureOptions features;
};

// Generic mode labels against abstracts (documents without one are skipped
// with a warning); user mode labels by keyword activation and adds the two
// keyword features.
std::vector<PreparedDoc> prepare_documents(const CorpusResources& resources, const PrepareOptions& options);

std::vector<FeatureVector> flatten(std::span<const PreparedDoc> docs);

}  // namespace salience
