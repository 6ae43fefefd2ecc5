#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"

namespace salience {

// Content-term counts of a single document.
struct DocumentTerms {
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t max_count = 0;
  std::size_t total = 0;

  explicit DocumentTerms(const Document& doc);
  std::size_t count(std::string_view term) const;
};

// ln(n) - ln(df) + 1; zero when df == 0.
double idf_factor(std::size_t n_docs, std::size_t df);

// Raw count / maximum count over the document's content terms.
double tf_norm(std::string_view term, const DocumentTerms& terms);
double tf_norm(std::string_view term, const Document& doc);

double tf_idf_weight(std::string_view term, const DocumentTerms& terms, const CorpusStats& stats);
double tf_idf_weight(std::string_view term, const Document& doc, const CorpusStats& stats);

// One-sided log-likelihood ratio over the 2x2 table (term / other tokens) x
// (this document / rest of corpus). The document is part of the corpus counts.
// Zero when the in-document rate does not exceed the corpus rate.
double g2_statistic(std::size_t term_in_doc, std::size_t doc_total, std::size_t term_in_corpus,
                    std::size_t corpus_total);

double g2_score(std::string_view term, const DocumentTerms& terms, std::size_t doc_total,
                const CorpusStats& stats);
double g2_score(std::string_view term, const Document& doc, const CorpusStats& stats);

// ln(n * pair_count / (tf_a * tf_b)).
double mutual_information(std::size_t n, std::size_t pair_count, std::size_t tf_a, std::size_t tf_b);

struct CooccurrenceEntry {
  std::size_t pair_count = 0;
  double mutinfo = 0.0;
  bool operator==(const CooccurrenceEntry&) const = default;
};

struct CooccurrenceParams {
  std::size_t window = 40;
  std::size_t min_count = 10;
  double min_score = 10.0;
};

class CooccurrenceTable {
 public:
  using Key = std::pair<std::string, std::string>;

  CooccurrenceTable() = default;
  explicit CooccurrenceTable(CooccurrenceParams params) : params_(params) {}

  const CooccurrenceParams& params() const { return params_; }
  const std::map<Key, CooccurrenceEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Symmetric lookup.
  std::optional<CooccurrenceEntry> lookup(std::string_view a, std::string_view b) const;
  const std::vector<std::string>& neighbors(std::string_view word) const;

  // Adds an entry if it clears both (strict) thresholds; returns whether stored.
  bool insert(std::string_view a, std::string_view b, CooccurrenceEntry entry);

  // TSV `term_a term_b pair_count mutinfo`, sorted by (term_a, term_b).
  void save(const std::filesystem::path& path) const;
  std::string to_tsv() const;
  static CooccurrenceTable load(const std::filesystem::path& path, CooccurrenceParams params = {});
  static CooccurrenceTable parse(std::string_view content, CooccurrenceParams params = {});

  bool operator==(const CooccurrenceTable& other) const { return entries_ == other.entries_; }

 private:
  CooccurrenceParams params_;
  std::map<Key, CooccurrenceEntry> entries_;
  std::unordered_map<std::string, std::vector<std::string>> adjacency_;
};

// Treats the corpus as one content-token stream; windows never cross documents.
CooccurrenceTable build_cooccurrence_table(std::span<const Document> docs,
                                           CooccurrenceParams params = {});

class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  explicit SynonymLexicon(std::vector<std::vector<std::string>> synsets);

  const std::vector<std::vector<std::string>>& synsets() const { return synsets_; }
  bool contains(std::string_view word) const;
  // True iff both words belong to at least one common synset.
  bool linked(std::string_view a, std::string_view b) const;
  // Words sharing a synset with `word` (excluding itself).
  std::vector<std::string> synonyms(std::string_view word) const;

  // One synset per line, space-separated lowercase lemmas; '#' comments.
  static SynonymLexicon parse(std::string_view content);
  static SynonymLexicon load(const std::filesystem::path& path);

 private:
  std::vector<std::vector<std::string>> synsets_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

struct CohesionLinks {
  std::size_t syn_links = 0;
  std::size_t cooc_links = 0;
  bool operator==(const CohesionLinks&) const = default;
};

// Number of other sentences linked to each sentence of `doc`.
std::vector<CohesionLinks> cohesion_links(const Document& doc, const CooccurrenceTable& table,
                                          const SynonymLexicon& lex);
CohesionLinks cohesion_link_counts(const Sentence& sentence, const Document& doc,
                                   const CooccurrenceTable& table, const SynonymLexicon& lex);

// Content tokens of the sentence whose form occurs among title or heading
// content tokens. Every mention counts.
std::size_t title_term_mentions(const Sentence& sentence, const Document& doc);

}  // namespace salience
