#include "salience/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "salience/error.hpp"

namespace salience {

using json = nlohmann::json;

std::string_view to_string(SectionKind kind) {
  switch (kind) {
    case SectionKind::Introduction: return "introduction";
    case SectionKind::Conclusion: return "conclusion";
    case SectionKind::Other: return "other";
  }
  return "other";
}

std::optional<SectionKind> parse_section_kind(std::string_view name) {
  if (name == "introduction") return SectionKind::Introduction;
  if (name == "conclusion") return SectionKind::Conclusion;
  if (name == "other") return SectionKind::Other;
  return std::nullopt;
}

SectionKind infer_section_kind(std::string_view heading) {
  const std::string lowered = to_lower_utf8(heading);
  if (lowered.find("introduction") != std::string::npos) return SectionKind::Introduction;
  if (lowered.find("conclusion") != std::string::npos ||
      lowered.find("summary") != std::string::npos) {
    return SectionKind::Conclusion;
  }
  return SectionKind::Other;
}

std::size_t Sentence::content_token_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_content; }));
}

std::size_t Section::sentence_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.sentences.size();
  return n;
}

std::size_t Document::content_token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.content_token_count();
  return n;
}

namespace {

[[noreturn]] void fail(std::string_view origin, const std::string& path, const std::string& why) {
  throw DataError(std::string(origin) + ": " + path + ": " + why);
}

const json& require(const json& obj, const char* key, std::string_view origin,
                    const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(origin, path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& value, std::string_view origin, const std::string& path) {
  if (!value.is_string()) fail(origin, path, "expected a string");
  return value.get<std::string>();
}

Sentence make_sentence(const json& value, const Stoplist& stoplist, std::string_view origin,
                       const std::string& path) {
  Sentence s;
  s.raw_text = require_string(value, origin, path);
  s.tokens = tokenize(s.raw_text, stoplist);
  if (s.tokens.empty()) fail(origin, path, "sentence has no tokens");
  return s;
}

}  // namespace

Document parse_document(std::string_view content, const Stoplist& stoplist,
                        std::string_view origin) {
  json root;
  try {
    root = json::parse(content);
  } catch (const json::parse_error& e) {
    fail(origin, "$", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail(origin, "$", "expected an object");

  Document doc;
  doc.id = require_string(require(root, "id", origin, "$"), origin, "$.id");
  if (doc.id.empty()) fail(origin, "$.id", "empty document id");
  doc.title = require_string(require(root, "title", origin, "$"), origin, "$.title");
  doc.title_tokens = tokenize(doc.title, stoplist);

  if (const auto it = root.find("abstract"); it != root.end() && !it->is_null()) {
    if (!it->is_array()) fail(origin, "$.abstract", "expected an array of sentences");
    std::vector<Sentence> abstract;
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto s = make_sentence((*it)[i], stoplist, origin, "$.abstract[" + std::to_string(i) + "]");
      s.doc_index = i;
      abstract.push_back(std::move(s));
    }
    doc.abstract = std::move(abstract);
  }

  const json& sections = require(root, "sections", origin, "$");
  if (!sections.is_array()) fail(origin, "$.sections", "expected an array");
  if (sections.empty()) fail(origin, "$.sections", "document has no sections");

  for (std::size_t si = 0; si < sections.size(); ++si) {
    const std::string spath = "$.sections[" + std::to_string(si) + "]";
    const json& sj = sections[si];
    if (!sj.is_object()) fail(origin, spath, "expected an object");

    Section section;
    section.heading = require_string(require(sj, "heading", origin, spath), origin, spath + ".heading");
    section.heading_tokens = tokenize(section.heading, stoplist);
    const json& depth = require(sj, "depth", origin, spath);
    if (!depth.is_number_integer()) fail(origin, spath + ".depth", "expected an integer");
    section.depth = depth.get<int>();
    if (section.depth < 1 || section.depth > 4) fail(origin, spath + ".depth", "depth must be in [1,4]");
    if (const auto kind = sj.find("kind"); kind != sj.end() && !kind->is_null()) {
      const auto parsed = parse_section_kind(require_string(*kind, origin, spath + ".kind"));
      if (!parsed) fail(origin, spath + ".kind", "unknown section kind");
      section.kind = *parsed;
    } else {
      section.kind = infer_section_kind(section.heading);
    }

    const json& paragraphs = require(sj, "paragraphs", origin, spath);
    if (!paragraphs.is_array()) fail(origin, spath + ".paragraphs", "expected an array");
    for (std::size_t pi = 0; pi < paragraphs.size(); ++pi) {
      const std::string ppath = spath + ".paragraphs[" + std::to_string(pi) + "]";
      const json& pj = paragraphs[pi];
      if (!pj.is_array()) fail(origin, ppath, "expected an array of sentences");
      if (pj.empty()) continue;
      Paragraph paragraph;
      for (std::size_t k = 0; k < pj.size(); ++k) {
        auto s = make_sentence(pj[k], stoplist, origin, ppath + "[" + std::to_string(k) + "]");
        s.doc_index = doc.sentences.size();
        s.para_index = k;
        s.section_index = si;
        s.paragraph_index = section.paragraphs.size();
        paragraph.sentences.push_back(s.doc_index);
        doc.sentences.push_back(std::move(s));
      }
      section.paragraphs.push_back(std::move(paragraph));
    }
    if (section.sentence_count() == 0) fail(origin, spath, "section contains no sentences");
    doc.sections.push_back(std::move(section));
  }
  return doc;
}

Document load_document(const std::filesystem::path& path, const Stoplist& stoplist) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open document file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), stoplist, path.string());
}

std::string serialize_document(const Document& doc) {
  json root;
  root["id"] = doc.id;
  root["title"] = doc.title;
  if (doc.abstract) {
    json abstract = json::array();
    for (const auto& s : *doc.abstract) abstract.push_back(s.raw_text);
    root["abstract"] = std::move(abstract);
  }
  json sections = json::array();
  for (const auto& section : doc.sections) {
    json sj;
    sj["heading"] = section.heading;
    sj["depth"] = section.depth;
    sj["kind"] = std::string(to_string(section.kind));
    json paragraphs = json::array();
    for (const auto& p : section.paragraphs) {
      json pj = json::array();
      for (const auto idx : p.sentences) pj.push_back(doc.sentences[idx].raw_text);
      paragraphs.push_back(std::move(pj));
    }
    sj["paragraphs"] = std::move(paragraphs);
    sections.push_back(std::move(sj));
  }
  root["sections"] = std::move(sections);
  return root.dump(1) + "\n";
}

std::vector<Document> load_corpus(const std::filesystem::path& dir, const Stoplist& stoplist) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("corpus directory does not exist: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no *.json documents in " + dir.string());

  std::vector<Document> docs;
  std::set<std::string> ids;
  for (const auto& file : files) {
    auto doc = load_document(file, stoplist);
    if (!ids.insert(doc.id).second) {
      throw DataError(file.string() + ": duplicate document id \"" + doc.id + "\"");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace salience
