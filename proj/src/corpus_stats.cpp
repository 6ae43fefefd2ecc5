#include "salience/corpus_stats.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "salience/error.hpp"

namespace salience {

std::size_t CorpusStats::document_frequency(std::string_view term) const {
  const auto it = df.find(term);
  return it == df.end() ? 0 : it->second;
}

std::size_t CorpusStats::corpus_count(std::string_view term) const {
  const auto it = term_corpus_counts.find(term);
  return it == term_corpus_counts.end() ? 0 : it->second;
}

bool CorpusStats::has_document(std::string_view doc_id) const {
  return doc_token_totals.find(doc_id) != doc_token_totals.end();
}

CorpusStats build_corpus_stats(std::span<const Document> docs) {
  if (docs.empty()) throw DataError("cannot build corpus statistics from an empty corpus");
  CorpusStats stats;
  stats.n_docs = docs.size();
  for (const auto& doc : docs) {
    if (stats.doc_token_totals.count(doc.id) != 0) {
      throw DataError("duplicate document id \"" + doc.id + "\"");
    }
    std::set<std::string_view> seen;
    std::size_t total = 0;
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) {
        if (!token.is_content) continue;
        ++total;
        ++stats.term_corpus_counts[token.normalized];
        seen.insert(token.normalized);
      }
    }
    for (const auto term : seen) ++stats.df[std::string(term)];
    stats.doc_token_totals[doc.id] = total;
    stats.corpus_token_total += total;
  }
  return stats;
}

void save_corpus_stats(const CorpusStats& stats, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write corpus statistics: " + path.string());
  out << "n_docs\t" << stats.n_docs << '\n';
  for (const auto& [id, total] : stats.doc_token_totals) out << "doc\t" << id << '\t' << total << '\n';
  for (const auto& [term, df] : stats.df) {
    out << "term\t" << term << '\t' << df << '\t' << stats.corpus_count(term) << '\n';
  }
}

CorpusStats load_corpus_stats(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing corpus statistics " + path.string() + " (run the stats step first)");
  CorpusStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, '\t');) fields.push_back(f);
    try {
      if (fields[0] == "n_docs" && fields.size() == 2) {
        stats.n_docs = std::stoul(fields[1]);
      } else if (fields[0] == "doc" && fields.size() == 3) {
        const auto total = std::stoul(fields[2]);
        stats.doc_token_totals[fields[1]] = total;
        stats.corpus_token_total += total;
      } else if (fields[0] == "term" && fields.size() == 4) {
        stats.df[fields[1]] = std::stoul(fields[2]);
        stats.term_corpus_counts[fields[1]] = std::stoul(fields[3]);
      } else {
        throw DataError("bad record");
      }
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed statistics record");
    }
  }
  return stats;
}

}  // namespace salience
