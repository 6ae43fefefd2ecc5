#include "salience/pipeline.hpp"

#include "salience/error.hpp"

namespace salience {

std::string_view to_string(Mode mode) { return mode == Mode::User ? "user" : "generic"; }

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "generic") return Mode::Generic;
  if (text == "user") return Mode::User;
  return std::nullopt;
}

const Document* CorpusResources::find(std::string_view doc_id) const {
  for (const auto& doc : docs) {
    if (doc.id == doc_id) return &doc;
  }
  return nullptr;
}

CorpusResources build_resources(std::vector<Document> docs, SynonymLexicon lex, const CooccurrenceParams& cooc) {
  CorpusResources resources;
  resources.docs = std::move(docs);
  resources.stats = build_corpus_stats(resources.docs);
  resources.table = build_cooccurrence_table(resources.docs, cooc);
  resources.lex = std::move(lex);
  return resources;
}

void attach_topic(CorpusResources& resources, Topic topic, const ActivationParams& activation) {
  resources.keywords.clear();
  for (const auto& doc : resources.docs) {
    resources.keywords.emplace(doc.id, spread_activation(topic, doc, resources.table, resources.lex, activation));
  }
  resources.topic = std::move(topic);
}

void attach_user_interest(CorpusResources& resources, std::span<const std::string> interest_ids,
                          const TopicParams& topic_params, const ActivationParams& activation) {
  std::vector<const Document*> interest;
  for (const auto& id : interest_ids) {
    const Document* doc = resources.find(id);
    if (doc == nullptr) throw DataError("interest document \"" + id + "\" is not in the corpus");
    interest.push_back(doc);
  }
  attach_topic(resources, build_topic_centroid(interest, resources.stats, topic_params), activation);
}

std::vector<PreparedDoc> prepare_documents(const CorpusResources& resources, const PrepareOptions& options) {
  if (options.mode == Mode::User && !resources.topic) {
    throw ConfigError("user-focused mode needs an interest set (topic)");
  }
  std::vector<PreparedDoc> prepared;
  prepared.reserve(resources.docs.size());
  for (const auto& doc : resources.docs) {
    PreparedDoc out;
    out.doc_id = doc.id;
    std::vector<bool> labels;
    const KeywordMap* keywords = nullptr;
    if (options.mode == Mode::Generic) {
      if (!doc.abstract || doc.abstract->empty()) {
        warn("skipping document \"" + doc.id + "\": no abstract to label against");
        continue;
      }
      labels = label_document(doc, resources.stats, options.features.compression);
    } else {
      keywords = &resources.keywords.at(doc.id);
      labels = generate_user_focused_labels(doc, *keywords, options.features.compression);
    }
    out.vectors = extract_features(doc, resources.stats, resources.table, resources.lex, options.features, keywords);
    for (std::size_t i = 0; i < out.vectors.size(); ++i) out.vectors[i].label = labels[i];
    prepared.push_back(std::move(out));
  }
  return prepared;
}

std::vector<FeatureVector> flatten(std::span<const PreparedDoc> docs) {
  std::vector<FeatureVector> all;
  for (const auto& d : docs) all.insert(all.end(), d.vectors.begin(), d.vectors.end());
  return all;
}

}  // namespace salience
