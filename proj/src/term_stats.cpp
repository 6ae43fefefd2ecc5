#include "salience/term_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "salience/error.hpp"
#include "salience/format.hpp"

namespace salience {

DocumentTerms::DocumentTerms(const Document& doc) {
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      if (!token.is_content) continue;
      const auto n = ++counts[token.normalized];
      max_count = std::max(max_count, n);
      ++total;
    }
  }
}

std::size_t DocumentTerms::count(std::string_view term) const {
  const auto it = counts.find(std::string(term));
  return it == counts.end() ? 0 : it->second;
}

double idf_factor(std::size_t n_docs, std::size_t df) {
  if (df == 0 || n_docs == 0) return 0.0;
  return std::log(static_cast<double>(n_docs)) - std::log(static_cast<double>(df)) + 1.0;
}

double tf_norm(std::string_view term, const DocumentTerms& terms) {
  if (terms.max_count == 0) return 0.0;
  return static_cast<double>(terms.count(term)) / static_cast<double>(terms.max_count);
}

double tf_norm(std::string_view term, const Document& doc) { return tf_norm(term, DocumentTerms(doc)); }

double tf_idf_weight(std::string_view term, const DocumentTerms& terms, const CorpusStats& stats) {
  return tf_norm(term, terms) * idf_factor(stats.n_docs, stats.document_frequency(term));
}

double tf_idf_weight(std::string_view term, const Document& doc, const CorpusStats& stats) {
  return tf_idf_weight(term, DocumentTerms(doc), stats);
}

namespace {

double xlogx_ratio(double observed, double expected) {
  if (observed <= 0.0) return 0.0;
  return observed * std::log(observed / expected);
}

}  // namespace

double g2_statistic(std::size_t term_in_doc, std::size_t doc_total, std::size_t term_in_corpus,
                    std::size_t corpus_total) {
  if (doc_total == 0 || corpus_total == 0) return 0.0;
  if (term_in_doc > term_in_corpus || doc_total > corpus_total ||
      term_in_corpus - term_in_doc > corpus_total - doc_total ||
      doc_total - term_in_doc > corpus_total - term_in_corpus) {
    throw DataError("inconsistent contingency counts for G2");
  }
  // One-sided: only over-representation scores.
  using wide = unsigned __int128;
  if (static_cast<wide>(term_in_doc) * corpus_total <= static_cast<wide>(term_in_corpus) * doc_total) {
    return 0.0;
  }
  const double n = static_cast<double>(corpus_total);
  const double a = static_cast<double>(term_in_doc);
  const double b = static_cast<double>(term_in_corpus - term_in_doc);
  const double c = static_cast<double>(doc_total - term_in_doc);
  const double d = n - a - b - c;
  const double row_term = a + b;
  const double row_other = c + d;
  const double col_doc = a + c;
  const double col_rest = b + d;
  const double sum = xlogx_ratio(a, row_term * col_doc / n) + xlogx_ratio(b, row_term * col_rest / n) +
                     xlogx_ratio(c, row_other * col_doc / n) + xlogx_ratio(d, row_other * col_rest / n);
  return std::max(0.0, 2.0 * sum);
}

double g2_score(std::string_view term, const DocumentTerms& terms, std::size_t doc_total,
                const CorpusStats& stats) {
  return g2_statistic(terms.count(term), doc_total, stats.corpus_count(term), stats.corpus_token_total);
}

double g2_score(std::string_view term, const Document& doc, const CorpusStats& stats) {
  const DocumentTerms terms(doc);
  return g2_score(term, terms, terms.total, stats);
}

double mutual_information(std::size_t n, std::size_t pair_count, std::size_t tf_a, std::size_t tf_b) {
  return std::log(static_cast<double>(n) * static_cast<double>(pair_count) /
                  (static_cast<double>(tf_a) * static_cast<double>(tf_b)));
}

// ---------------------------------------------------------------------------

std::optional<CooccurrenceEntry> CooccurrenceTable::lookup(std::string_view a, std::string_view b) const {
  Key key = a <= b ? Key{std::string(a), std::string(b)} : Key{std::string(b), std::string(a)};
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& CooccurrenceTable::neighbors(std::string_view word) const {
  static const std::vector<std::string> none;
  const auto it = adjacency_.find(std::string(word));
  return it == adjacency_.end() ? none : it->second;
}

bool CooccurrenceTable::insert(std::string_view a, std::string_view b, CooccurrenceEntry entry) {
  if (a == b) return false;
  if (entry.pair_count <= params_.min_count || !(entry.mutinfo > params_.min_score)) return false;
  Key key = a <= b ? Key{std::string(a), std::string(b)} : Key{std::string(b), std::string(a)};
  const auto [it, inserted] = entries_.insert_or_assign(key, entry);
  if (inserted) {
    adjacency_[key.first].push_back(key.second);
    adjacency_[key.second].push_back(key.first);
  }
  return true;
}

std::string CooccurrenceTable::to_tsv() const {
  std::string out;
  for (const auto& [key, entry] : entries_) {
    out += key.first;
    out += '\t';
    out += key.second;
    out += '\t';
    out += std::to_string(entry.pair_count);
    out += '\t';
    out += format_double(entry.mutinfo);
    out += '\n';
  }
  return out;
}

void CooccurrenceTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write co-occurrence table: " + path.string());
  out << to_tsv();
}

CooccurrenceTable CooccurrenceTable::parse(std::string_view content, CooccurrenceParams params) {
  // Cached entries already passed the thresholds they were built with.
  CooccurrenceTable table(params);
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, '\t');) fields.push_back(f);
    if (fields.size() != 4) {
      throw DataError("co-occurrence table line " + std::to_string(line_no) + ": expected 4 fields");
    }
    CooccurrenceEntry entry{parse_count(fields[2]), parse_double(fields[3])};
    Key key{fields[0], fields[1]};
    if (key.first > key.second) std::swap(key.first, key.second);
    if (table.entries_.emplace(key, entry).second) {
      table.adjacency_[key.first].push_back(key.second);
      table.adjacency_[key.second].push_back(key.first);
    }
  }
  return table;
}

CooccurrenceTable CooccurrenceTable::load(const std::filesystem::path& path, CooccurrenceParams params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("missing co-occurrence table " + path.string() + " (run the stats step first)");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), params);
}

CooccurrenceTable build_cooccurrence_table(std::span<const Document> docs, CooccurrenceParams params) {
  if (docs.empty()) throw DataError("cannot build a co-occurrence table from an empty corpus");
  std::unordered_map<std::string, std::size_t> term_counts;
  std::map<CooccurrenceTable::Key, std::size_t> pair_counts;
  std::size_t n = 0;

  std::vector<const std::string*> stream;
  for (const auto& doc : docs) {
    stream.clear();
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) {
        if (token.is_content) stream.push_back(&token.normalized);
      }
    }
    n += stream.size();
    for (std::size_t i = 0; i < stream.size(); ++i) {
      ++term_counts[*stream[i]];
      const std::size_t end = std::min(stream.size(), i + params.window + 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        const std::string& a = *stream[i];
        const std::string& b = *stream[j];
        if (a == b) continue;
        ++pair_counts[a < b ? CooccurrenceTable::Key{a, b} : CooccurrenceTable::Key{b, a}];
      }
    }
  }

  CooccurrenceTable table(params);
  for (const auto& [key, count] : pair_counts) {
    if (count <= params.min_count) continue;
    const double mi = mutual_information(n, count, term_counts[key.first], term_counts[key.second]);
    table.insert(key.first, key.second, CooccurrenceEntry{count, mi});
  }
  return table;
}

// ---------------------------------------------------------------------------

SynonymLexicon::SynonymLexicon(std::vector<std::vector<std::string>> synsets)
    : synsets_(std::move(synsets)) {
  for (std::size_t id = 0; id < synsets_.size(); ++id) {
    for (const auto& word : synsets_[id]) {
      auto& ids = index_[word];
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
  }
}

bool SynonymLexicon::contains(std::string_view word) const {
  return index_.find(std::string(word)) != index_.end();
}

bool SynonymLexicon::linked(std::string_view a, std::string_view b) const {
  const auto ia = index_.find(std::string(a));
  const auto ib = index_.find(std::string(b));
  if (ia == index_.end() || ib == index_.end()) return false;
  // Both id lists are ascending.
  auto x = ia->second.begin();
  auto y = ib->second.begin();
  while (x != ia->second.end() && y != ib->second.end()) {
    if (*x == *y) return true;
    if (*x < *y) ++x; else ++y;
  }
  return false;
}

std::vector<std::string> SynonymLexicon::synonyms(std::string_view word) const {
  std::set<std::string> out;
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return {};
  for (const auto id : it->second) {
    for (const auto& w : synsets_[id]) {
      if (w != word) out.insert(w);
    }
  }
  return {out.begin(), out.end()};
}

SynonymLexicon SynonymLexicon::parse(std::string_view content) {
  std::vector<std::vector<std::string>> synsets;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(to_lower_utf8(w));
    if (!words.empty()) synsets.push_back(std::move(words));
  }
  return SynonymLexicon(std::move(synsets));
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open synonym lexicon: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> content_words(const Sentence& sentence) {
  std::set<std::string> words;
  for (const auto& token : sentence.tokens) {
    if (token.is_content) words.insert(token.normalized);
  }
  return {words.begin(), words.end()};
}

}  // namespace

std::vector<CohesionLinks> cohesion_links(const Document& doc, const CooccurrenceTable& table,
                                          const SynonymLexicon& lex) {
  const std::size_t n = doc.sentences.size();
  std::vector<std::vector<std::string>> words(n);
  for (std::size_t i = 0; i < n; ++i) words[i] = content_words(doc.sentences[i]);

  std::vector<CohesionLinks> links(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool syn = false;
      bool cooc = false;
      for (const auto& a : words[i]) {
        for (const auto& b : words[j]) {
          if (!syn && lex.linked(a, b)) syn = true;
          if (!cooc && a != b && table.lookup(a, b)) cooc = true;
          if (syn && cooc) break;
        }
        if (syn && cooc) break;
      }
      if (syn) {
        ++links[i].syn_links;
        ++links[j].syn_links;
      }
      if (cooc) {
        ++links[i].cooc_links;
        ++links[j].cooc_links;
      }
    }
  }
  return links;
}

CohesionLinks cohesion_link_counts(const Sentence& sentence, const Document& doc,
                                   const CooccurrenceTable& table, const SynonymLexicon& lex) {
  if (sentence.doc_index >= doc.sentences.size()) throw DataError("sentence is not part of the document");
  return cohesion_links(doc, table, lex)[sentence.doc_index];
}

std::size_t title_term_mentions(const Sentence& sentence, const Document& doc) {
  std::set<std::string_view> title_terms;
  for (const auto& t : doc.title_tokens) {
    if (t.is_content) title_terms.insert(t.normalized);
  }
  for (const auto& section : doc.sections) {
    for (const auto& t : section.heading_tokens) {
      if (t.is_content) title_terms.insert(t.normalized);
    }
  }
  std::size_t mentions = 0;
  for (const auto& token : sentence.tokens) {
    if (token.is_content && title_terms.count(token.normalized) != 0) ++mentions;
  }
  return mentions;
}

}  // namespace salience
