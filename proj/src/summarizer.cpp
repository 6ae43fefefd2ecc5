#include "salience/summarizer.hpp"

#include <algorithm>

#include "json.hpp"
#include "salience/error.hpp"
#include "salience/features.hpp"

namespace salience {

Summary summarize(const Document& doc, const Model& model, const CorpusStats& stats,
                  const CooccurrenceTable& table, const SynonymLexicon& lex, double compression,
                  const KeywordMap* keywords, std::string model_id) {
  if (doc.sentences.empty()) throw DataError("document \"" + doc.id + "\" has no sentences to summarize");
  if (requires_keywords(model) && keywords == nullptr) {
    throw ConfigError("the model tests keyword features; summarizing \"" + doc.id +
                      "\" needs an interest set (--interest)");
  }
  FeatureOptions options;
  options.compression = compression;
  const auto vectors = extract_features(doc, stats, table, lex, options, keywords);

  std::vector<double> scores;
  scores.reserve(vectors.size());
  for (const auto& v : vectors) scores.push_back(summary_score(model, v));
  auto order = rank_descending(scores);
  order.resize(top_count(compression, order.size()));
  std::sort(order.begin(), order.end());

  Summary summary;
  summary.doc_id = doc.id;
  summary.compression = compression;
  summary.model_id = std::move(model_id);
  for (const auto i : order) summary.sentences.push_back({i, doc.sentences[i].raw_text});
  return summary;
}

std::string summary_to_text(const Summary& summary) {
  std::string out;
  for (const auto& s : summary.sentences) {
    out += s.text;
    out += '\n';
  }
  return out;
}

std::string summary_to_json(const Summary& summary) {
  nlohmann::json root;
  root["doc_id"] = summary.doc_id;
  root["compression"] = summary.compression;
  if (!summary.model_id.empty()) root["model_id"] = summary.model_id;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& s : summary.sentences) list.push_back({{"index", s.index}, {"text", s.text}});
  root["sentences"] = std::move(list);
  return root.dump(2) + "\n";
}

}  // namespace salience
