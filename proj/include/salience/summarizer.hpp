#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"
#include "salience/learners.hpp"
#include "salience/term_stats.hpp"
#include "salience/user_focus.hpp"

namespace salience {

struct SummarySentence {
  std::size_t index = 0;
  std::string text;
  bool operator==(const SummarySentence&) const = default;
};

struct Summary {
  std::string doc_id;
  double compression = 0.2;
  std::vector<SummarySentence> sentences;  // source order
  std::string model_id;
};

// Ranks sentences by summary_score (ties by position), keeps the top
// ceil(c*N) and returns them in source order. Models that test keyword
// features need `keywords`; ConfigError otherwise.
Summary summarize(const Document& doc, const Model& model, const CorpusStats& stats,
                  const CooccurrenceTable& table, const SynonymLexicon& lex, double compression,
                  const KeywordMap* keywords = nullptr, std::string model_id = {});

std::string summary_to_text(const Summary& summary);
std::string summary_to_json(const Summary& summary);

}  // namespace salience
