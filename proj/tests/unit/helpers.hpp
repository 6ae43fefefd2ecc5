#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "salience/document.hpp"
#include "salience/pipeline.hpp"
#include "salience/synth.hpp"
#include "salience/text.hpp"

namespace testing {

inline const salience::Stoplist& small_stoplist() {
  static const salience::Stoplist list = salience::Stoplist::parse("the\na\nof\nand\nis\nin\nto\n");
  return list;
}

struct SectionDef {
  std::string heading;
  std::vector<std::vector<std::string>> paragraphs;
  int depth = 1;
  std::string kind;  // empty: inferred from the heading
};

inline std::string doc_json(const std::string& id, const std::string& title, const std::vector<SectionDef>& sections,
                            const std::vector<std::string>* abstract = nullptr) {
  nlohmann::json j;
  j["id"] = id;
  j["title"] = title;
  if (abstract != nullptr) j["abstract"] = *abstract;
  j["sections"] = nlohmann::json::array();
  for (const auto& s : sections) {
    nlohmann::json sj = {{"heading", s.heading}, {"depth", s.depth}, {"paragraphs", s.paragraphs}};
    if (!s.kind.empty()) sj["kind"] = s.kind;
    j["sections"].push_back(sj);
  }
  return j.dump();
}

inline salience::Document make_doc(const std::string& id, const std::string& title,
                                   const std::vector<SectionDef>& sections,
                                   const std::vector<std::string>* abstract = nullptr) {
  return salience::parse_document(doc_json(id, title, sections, abstract), small_stoplist(), id);
}

// One section, one paragraph per sentence list.
inline salience::Document flat_doc(const std::string& id, const std::vector<std::string>& sentences,
                                   const std::vector<std::string>* abstract = nullptr) {
  return make_doc(id, "Untitled", {{"Body", {sentences}}}, abstract);
}

// Parsed documents and statistics for a generated corpus.
inline salience::CorpusResources synth_resources(const salience::SynthCorpus& corpus) {
  const auto stoplist = salience::Stoplist::parse(corpus.stoplist);
  std::vector<salience::Document> docs;
  for (const auto& d : corpus.docs) docs.push_back(salience::parse_document(d.json, stoplist, d.id));
  return salience::build_resources(std::move(docs), salience::SynonymLexicon::parse(corpus.synonyms));
}

}  // namespace testing
