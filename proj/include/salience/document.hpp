#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salience/text.hpp"

namespace salience {

enum class SectionKind { Introduction, Conclusion, Other };

std::string_view to_string(SectionKind kind);
std::optional<SectionKind> parse_section_kind(std::string_view name);

// Heading-based inference used when a section carries no explicit kind.
SectionKind infer_section_kind(std::string_view heading);

struct Sentence {
  std::size_t doc_index = 0;      // position in the document, 0-based
  std::size_t para_index = 0;     // position within its paragraph, 0-based
  std::size_t section_index = 0;
  std::size_t paragraph_index = 0;  // paragraph position within the section
  std::vector<Token> tokens;
  std::string raw_text;

  std::size_t content_token_count() const;
  bool operator==(const Sentence&) const = default;
};

struct Paragraph {
  std::vector<std::size_t> sentences;  // doc_index values, ascending
  bool operator==(const Paragraph&) const = default;
};

struct Section {
  std::string heading;
  int depth = 1;  // 1..4
  SectionKind kind = SectionKind::Other;
  std::vector<Token> heading_tokens;
  std::vector<Paragraph> paragraphs;

  std::size_t sentence_count() const;
  bool operator==(const Section&) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::vector<Token> title_tokens;
  std::optional<std::vector<Sentence>> abstract;
  std::vector<Section> sections;
  std::vector<Sentence> sentences;  // flat, in file order; sentences[i].doc_index == i

  std::size_t size() const { return sentences.size(); }
  std::size_t content_token_count() const;
  bool operator==(const Document&) const = default;
};

// Parses the JSON document format. `origin` prefixes error messages (usually
// the file path). Throws DataError on malformed or empty input.
Document parse_document(std::string_view content, const Stoplist& stoplist,
                        std::string_view origin = "<document>");

Document load_document(const std::filesystem::path& path, const Stoplist& stoplist);

// Serializes back to the JSON document format (kind always written).
std::string serialize_document(const Document& doc);

// Loads every *.json file of a directory in filename order. Ids must be unique.
std::vector<Document> load_corpus(const std::filesystem::path& dir, const Stoplist& stoplist);

}  // namespace salience
