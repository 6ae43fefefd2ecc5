#include "salience/user_focus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "salience/error.hpp"
#include "salience/features.hpp"
#include "salience/format.hpp"

namespace salience {

double Topic::score(std::string_view word) const {
  const auto it = words.find(word);
  return it == words.end() ? 0.0 : it->second;
}

double Topic::max_score() const {
  double best = 0.0;
  for (const auto& [word, score] : words) best = std::max(best, score);
  return best;
}

double KeywordMap::weight(std::string_view word) const {
  const auto it = weights.find(word);
  return it == weights.end() ? 0.0 : it->second;
}

double topic_cutoff(std::span<const double> scores, double threshold_sigma) {
  if (scores.empty()) throw NumericError("topic candidate pool is empty");
  double mean = 0.0;
  for (const double x : scores) mean += x;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (const double x : scores) var += (x - mean) * (x - mean);
  return mean + threshold_sigma * std::sqrt(var / static_cast<double>(scores.size()));
}

Topic build_topic_centroid(std::span<const Document* const> interest_docs, const CorpusStats& stats,
                           const TopicParams& params) {
  if (interest_docs.empty()) throw ConfigError("interest set is empty");
  Topic topic;
  topic.threshold_sigma = params.threshold_sigma;

  std::map<std::string, std::pair<double, std::size_t>> pooled;  // sum, occurrences
  for (const Document* doc : interest_docs) {
    if (!stats.has_document(doc->id)) {
      throw DataError("interest document \"" + doc->id + "\" is not covered by the corpus statistics");
    }
    topic.source_doc_ids.push_back(doc->id);
    const DocumentTerms terms(*doc);
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [term, count] : terms.counts) {
      const double g2 = g2_score(term, terms, terms.total, stats);
      if (g2 > 0.0) scored.emplace_back(term, g2);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (scored.size() > params.top_k_per_doc) scored.resize(params.top_k_per_doc);
    for (const auto& [term, g2] : scored) {
      auto& slot = pooled[term];
      slot.first += g2;
      ++slot.second;
    }
  }
  if (pooled.empty()) throw NumericError("topic candidate pool is empty (no over-represented content words)");

  std::vector<std::pair<std::string, double>> averaged;
  std::vector<double> scores;
  averaged.reserve(pooled.size());
  for (const auto& [term, slot] : pooled) {
    averaged.emplace_back(term, slot.first / static_cast<double>(slot.second));
    scores.push_back(averaged.back().second);
  }
  const double cutoff = topic_cutoff(scores, params.threshold_sigma);

  for (const auto& [term, score] : averaged) {
    if (score > cutoff) topic.words.emplace(term, score);
  }
  if (topic.words.empty()) {
    throw NumericError("no candidate word lies more than " + format_double(params.threshold_sigma) +
                       " standard deviations above the mean score; topic is empty");
  }
  return topic;
}

KeywordMap spread_activation(const Topic& topic, const Document& doc, const CooccurrenceTable& table,
                             const SynonymLexicon& lex, const ActivationParams& params) {
  if (!(params.decay > 0.0 && params.decay < 1.0)) throw ConfigError("activation decay must be in (0,1)");
  if (params.iterations < 1) throw ConfigError("activation needs at least one iteration");

  std::set<std::string> words;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (t.is_content) words.insert(t.normalized);
    }
  }
  const std::vector<std::string> vocab(words.begin(), words.end());
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < vocab.size(); ++i) position.emplace(vocab[i], i);

  std::vector<std::vector<std::size_t>> neighbors(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    std::set<std::size_t> linked;
    for (const auto& v : table.neighbors(vocab[i])) {
      if (const auto it = position.find(v); it != position.end()) linked.insert(it->second);
    }
    for (const auto& v : lex.synonyms(vocab[i])) {
      if (const auto it = position.find(v); it != position.end()) linked.insert(it->second);
    }
    neighbors[i].assign(linked.begin(), linked.end());
  }

  std::vector<double> activation(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) activation[i] = topic.score(vocab[i]);

  for (std::size_t step = 0; step < params.iterations; ++step) {
    std::vector<double> next = activation;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      double best = 0.0;
      for (const auto j : neighbors[i]) best = std::max(best, activation[j]);
      next[i] = std::max(activation[i], params.decay * best);
    }
    activation = std::move(next);
  }

  KeywordMap keywords;
  keywords.doc_id = doc.id;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (activation[i] > 0.0) keywords.weights.emplace(vocab[i], activation[i]);
  }
  return keywords;
}

std::vector<double> keyword_sentence_weights(const Document& doc, const KeywordMap& keywords) {
  std::vector<double> weights;
  weights.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    double sum = 0.0;
    std::size_t content = 0;
    for (const auto& t : s.tokens) {
      if (!t.is_content) continue;
      ++content;
      sum += keywords.weight(t.normalized);
    }
    weights.push_back(content == 0 ? 0.0 : sum / static_cast<double>(content));
  }
  return weights;
}

std::vector<bool> generate_user_focused_labels(const Document& doc, const KeywordMap& keywords,
                                               double compression) {
  const auto weights = keyword_sentence_weights(doc, keywords);
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
    warn("document \"" + doc.id + "\" has no keyword-bearing sentences; labeling by position");
  }
  return filter1(weights, compression);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<std::string, double>> read_word_scores(const std::filesystem::path& path,
                                                             const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing " + what + " file " + path.string());
  std::vector<std::pair<std::string, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected `word<TAB>score`");
    }
    rows.emplace_back(line.substr(0, tab), parse_double(std::string_view(line).substr(tab + 1)));
  }
  return rows;
}

}  // namespace

void save_topic(const Topic& topic, const std::filesystem::path& path) {
  std::vector<std::pair<std::string, double>> rows(topic.words.begin(), topic.words.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write topic file: " + path.string());
  for (const auto& [word, score] : rows) out << word << '\t' << format_double(score) << '\n';
}

Topic load_topic(const std::filesystem::path& path) {
  Topic topic;
  for (auto& [word, score] : read_word_scores(path, "topic")) topic.words.emplace(std::move(word), score);
  if (topic.words.empty()) throw DataError("topic file " + path.string() + " is empty");
  return topic;
}

void save_keywords(const KeywordMap& keywords, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write keyword file: " + path.string());
  for (const auto& [word, weight] : keywords.weights) out << word << '\t' << format_double(weight) << '\n';
}

KeywordMap load_keywords(const std::filesystem::path& path, std::string doc_id) {
  KeywordMap keywords;
  keywords.doc_id = std::move(doc_id);
  for (auto& [word, weight] : read_word_scores(path, "keyword")) {
    if (!(weight > 0.0)) throw DataError(path.string() + ": keyword weights must be positive");
    keywords.weights.emplace(std::move(word), weight);
  }
  return keywords;
}

std::vector<std::string> load_interest_ids(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open interest file: " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    ids.push_back(line.substr(first, last - first + 1));
  }
  if (ids.empty()) throw ConfigError("interest file " + path.string() + " lists no documents");
  return ids;
}

}  // namespace salience
