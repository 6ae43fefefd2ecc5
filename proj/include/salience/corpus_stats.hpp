#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "salience/document.hpp"

namespace salience {

// Corpus-wide counts over content tokens. Ordered maps keep every dump and
// iteration deterministic.
struct CorpusStats {
  std::size_t n_docs = 0;
  std::map<std::string, std::size_t, std::less<>> df;
  std::map<std::string, std::size_t, std::less<>> doc_token_totals;
  std::size_t corpus_token_total = 0;
  std::map<std::string, std::size_t, std::less<>> term_corpus_counts;

  std::size_t document_frequency(std::string_view term) const;
  std::size_t corpus_count(std::string_view term) const;
  bool has_document(std::string_view doc_id) const;

  bool operator==(const CorpusStats&) const = default;
};

// Throws DataError on an empty corpus or duplicate document ids.
CorpusStats build_corpus_stats(std::span<const Document> docs);

// Tab-separated cache: "n_docs", "doc", and "term" records.
void save_corpus_stats(const CorpusStats& stats, const std::filesystem::path& path);
CorpusStats load_corpus_stats(const std::filesystem::path& path);

}  // namespace salience
