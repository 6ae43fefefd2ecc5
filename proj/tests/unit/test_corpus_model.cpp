#include "doctest.h"
#include "helpers.hpp"
#include "salience/corpus_stats.hpp"
#include "salience/error.hpp"

using namespace salience;
using testing::make_doc;
using testing::small_stoplist;

TEST_CASE("tokenize flags stopwords and content words") {
  const auto tokens = tokenize("The cat sat.", Stoplist::parse("the\n"));
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].normalized == "the");
  CHECK_FALSE(tokens[0].is_content);
  CHECK(tokens[1].is_content);
  CHECK(tokens[2].normalized == "sat");
  for (const auto& t : tokens) CHECK_FALSE(t.is_name_mention);
}

TEST_CASE("capitalized non-initial content tokens are name mentions") {
  const auto tokens = tokenize("We met John Smith", Stoplist::parse("we\n"));
  REQUIRE(tokens.size() == 4);
  CHECK_FALSE(tokens[1].is_name_mention);
  CHECK(tokens[2].is_name_mention);
  CHECK(tokens[3].is_name_mention);
  CHECK_FALSE(tokenize("John went home", small_stoplist())[0].is_name_mention);
}

TEST_CASE("tokenizer splits hyphens, lowercases unicode and drops empties") {
  const auto tokens = tokenize("  Large-scale ÉTUDE, 42 -- ok ", small_stoplist());
  std::vector<std::string> words;
  for (const auto& t : tokens) words.push_back(t.normalized);
  CHECK(words == std::vector<std::string>{"large", "scale", "étude", "42", "ok"});
  CHECK(tokenize("", small_stoplist()).empty());
  CHECK(tokenize(" ,;. ", small_stoplist()).empty());
}

TEST_CASE("parse_document assigns indices and infers section kinds") {
  const auto doc = make_doc("d", "A Title",
                            {{"1. Introduction", {{"First one.", "Second one."}}},
                             {"Method", {{"Third."}, {"Fourth.", "Fifth."}}, 2},
                             {"5. Conclusion", {{"Sixth."}}},
                             {"Summary and outlook", {{"Seventh."}}},
                             {"Heading", {{"Eighth."}}, 1, "introduction"}});
  REQUIRE(doc.sentences.size() == 8);
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) CHECK(doc.sentences[i].doc_index == i);
  CHECK(doc.sections[0].kind == SectionKind::Introduction);
  CHECK(doc.sections[1].kind == SectionKind::Other);
  CHECK(doc.sections[2].kind == SectionKind::Conclusion);
  CHECK(doc.sections[3].kind == SectionKind::Conclusion);
  CHECK(doc.sections[4].kind == SectionKind::Introduction);
  CHECK(doc.sentences[4].para_index == 1);
  CHECK(doc.sentences[4].paragraph_index == 1);
  CHECK(doc.sentences[4].section_index == 1);
  CHECK_FALSE(doc.abstract.has_value());
}

TEST_CASE("two pre-split sentences give two indexed sentences") {
  const auto doc = testing::flat_doc("d", {"Alpha beta.", "Gamma delta."});
  REQUIRE(doc.size() == 2);
  CHECK(doc.sentences[1].doc_index == 1);
}

TEST_CASE("malformed and empty documents are rejected with a path") {
  CHECK_THROWS_AS(parse_document("{not json", small_stoplist()), DataError);
  CHECK_THROWS_AS(parse_document(R"({"id":"x","title":"t","sections":[]})", small_stoplist()), DataError);
  CHECK_THROWS_AS(
      parse_document(R"({"id":"x","title":"t","sections":[{"heading":"h","depth":1,"paragraphs":[]}]})",
                     small_stoplist()),
      DataError);
  try {
    parse_document(R"({"id":"x","title":"t","sections":[{"heading":"h","depth":7,"paragraphs":[["a b."]]}]})",
                   small_stoplist());
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("sections[0]") != std::string::npos);
  }
}

TEST_CASE("serialized documents re-parse identically") {
  const std::vector<std::string> abstract = {"Short abstract here."};
  const auto doc = make_doc("rt", "Parsing With Features",
                            {{"Introduction", {{"We met John Smith.", "It rained."}}},
                             {"Body", {{"Numbers 3 and 4."}}, 3}},
                            &abstract);
  const auto again = parse_document(serialize_document(doc), small_stoplist());
  CHECK(again == doc);
}

TEST_CASE("corpus statistics count documents and content tokens") {
  std::vector<Document> docs = {testing::flat_doc("a", {"parser parser parser parser parser x."}),
                                testing::flat_doc("b", {"the parser y z."})};
  const auto stats = build_corpus_stats(docs);
  CHECK(stats.n_docs == 2);
  CHECK(stats.document_frequency("parser") == 2);
  CHECK(stats.corpus_count("parser") == 6);
  CHECK(stats.document_frequency("x") == 1);
  CHECK(stats.document_frequency("the") == 0);
  CHECK(stats.corpus_token_total == 9);
  CHECK(stats.doc_token_totals.at("b") == 3);
  for (const auto& [term, df] : stats.df) {
    CHECK(df >= 1);
    CHECK(df <= stats.n_docs);
    CHECK(stats.corpus_count(term) >= df);
  }

  std::vector<Document> dup = {docs[0], docs[0]};
  CHECK_THROWS_AS(build_corpus_stats(dup), DataError);
  CHECK_THROWS_AS(build_corpus_stats(std::vector<Document>{}), DataError);
}

TEST_CASE("corpus statistics round-trip through their file") {
  std::vector<Document> docs = {testing::flat_doc("a", {"one two three.", "two three."}),
                                testing::flat_doc("b", {"three four."})};
  const auto stats = build_corpus_stats(docs);
  const auto path = std::filesystem::temp_directory_path() / "salience_stats_rt.tsv";
  save_corpus_stats(stats, path);
  CHECK(load_corpus_stats(path) == stats);
  std::filesystem::remove(path);
}
