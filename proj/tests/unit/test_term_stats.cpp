#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "salience/corpus_stats.hpp"
#include "salience/term_stats.hpp"

using namespace salience;
using testing::flat_doc;
using testing::make_doc;

namespace {

// Independent 2x2 log-likelihood oracle.
double llr_oracle(double a, double doc, double corpus_term, double corpus) {
  const double o[2][2] = {{a, corpus_term - a}, {doc - a, corpus - doc - (corpus_term - a)}};
  const double rows[2] = {corpus_term, corpus - corpus_term};
  const double cols[2] = {doc, corpus - doc};
  double g = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = rows[i] * cols[j] / corpus;
      if (o[i][j] > 0) g += o[i][j] * std::log(o[i][j] / e);
    }
  }
  return a / doc > corpus_term / corpus ? 2.0 * g : 0.0;
}

}  // namespace

TEST_CASE("tf_norm divides by the most frequent content term") {
  const auto doc = flat_doc("d", {"x x x x x x y y y z."});
  CHECK(tf_norm("x", doc) == 1.0);
  CHECK(tf_norm("y", doc) == 0.5);
  CHECK(tf_norm("absent", doc) == 0.0);
}

TEST_CASE("tf.idf matches the hand-evaluated weight") {
  CHECK(idf_factor(100, 1) == doctest::Approx(std::log(100.0) + 1.0).epsilon(1e-12));
  CHECK(0.5 * idf_factor(100, 1) == doctest::Approx(2.80259).epsilon(1e-5));
  CHECK(idf_factor(7, 7) == 1.0);
  CHECK(idf_factor(7, 0) == 0.0);

  std::vector<Document> docs = {flat_doc("a", {"common rare rare."}), flat_doc("b", {"common other."})};
  const auto stats = build_corpus_stats(docs);
  CHECK(tf_idf_weight("common", docs[1], stats) == doctest::Approx(1.0));
  CHECK(tf_idf_weight("rare", docs[0], stats) == doctest::Approx(std::log(2.0) + 1.0));
  CHECK(tf_idf_weight("absent", docs[0], stats) == 0.0);
  // Monotone non-increasing in df.
  for (std::size_t df = 1; df < 50; ++df) CHECK(idf_factor(50, df + 1) <= idf_factor(50, df));
}

TEST_CASE("G2 agrees with the contingency-table oracle") {
  CHECK(g2_statistic(10, 100, 20, 10000) == doctest::Approx(llr_oracle(10, 100, 20, 10000)).epsilon(1e-12));
  CHECK(g2_statistic(10, 100, 20, 10000) > 0.0);
  CHECK(g2_statistic(5, 100, 500, 10000) == 0.0);  // equal rates
  CHECK(g2_statistic(1, 100, 500, 10000) == 0.0);  // under-represented
  CHECK(g2_statistic(100, 100, 100, 100) == 0.0);  // single-document corpus
  for (std::size_t a = 1; a <= 30; ++a) {
    const double got = g2_statistic(a, 200, 40, 5000);
    CHECK(got == doctest::Approx(llr_oracle(a, 200, 40, 5000)).epsilon(1e-9));
    CHECK(got >= 0.0);
  }
}

TEST_CASE("mutual information and table thresholds") {
  CHECK(mutual_information(1000, 20, 50, 40) == doctest::Approx(std::log(10.0)).epsilon(1e-12));
  CHECK(mutual_information(100, 10, 10, 100) == doctest::Approx(0.0));

  CooccurrenceTable table(CooccurrenceParams{40, 10, 1.0});
  CHECK_FALSE(table.insert("a", "b", {10, 5.0}));  // count must exceed 10
  CHECK_FALSE(table.insert("a", "b", {11, 1.0}));  // score must exceed 1
  CHECK(table.insert("b", "a", {11, 5.0}));
  REQUIRE(table.lookup("a", "b"));
  CHECK(table.lookup("a", "b") == table.lookup("b", "a"));
  CHECK(table.entries().begin()->first.first == "a");
  CHECK(table.neighbors("a") == std::vector<std::string>{"b"});
}

TEST_CASE("co-occurrence counting stays inside documents and windows") {
  // "p q" adjacent 12 times per document: with a tiny corpus the MI bound is
  // low, so relax the score threshold to observe the counts.
  std::vector<std::string> sentences;
  for (int i = 0; i < 12; ++i) sentences.push_back("p q filler" + std::to_string(i) + ".");
  std::vector<Document> docs = {flat_doc("a", sentences), flat_doc("b", {"q r."})};
  const auto table = build_cooccurrence_table(docs, {1, 10, -100.0});
  const auto pq = table.lookup("p", "q");
  REQUIRE(pq);
  CHECK(pq->pair_count == 12);
  const double n = 12 * 3 + 2;
  CHECK(pq->mutinfo == doctest::Approx(std::log(n * 12 / (12.0 * 13.0))));
  CHECK_FALSE(table.lookup("q", "r"));  // only one co-occurrence

  const auto strict = build_cooccurrence_table(docs);
  CHECK(strict.size() == 0);

  const auto reloaded = CooccurrenceTable::parse(table.to_tsv());
  CHECK(reloaded == table);
}

TEST_CASE("synonym links count unique other sentences") {
  const auto lex = SynonymLexicon::parse("# comment\ncar auto vehicle\nfast quick\n");
  CHECK(lex.linked("car", "vehicle"));
  CHECK(lex.linked("car", "car"));
  CHECK_FALSE(lex.linked("car", "fast"));
  CHECK_FALSE(lex.linked("bike", "bike"));

  const auto doc = flat_doc("d", {"car fast.", "auto quick.", "vehicle.", "nothing here."});
  const auto links = cohesion_links(doc, CooccurrenceTable{}, lex);
  CHECK(links[0].syn_links == 2);  // sentence 1 linked twice counts once
  CHECK(links[1].syn_links == 2);
  CHECK(links[2].syn_links == 2);
  CHECK(links[3].syn_links == 0);
  for (const auto& l : links) CHECK(l.cooc_links == 0);
  CHECK(cohesion_link_counts(doc.sentences[0], doc, CooccurrenceTable{}, lex) == links[0]);

  const auto none = cohesion_links(flat_doc("e", {"alpha.", "beta."}), CooccurrenceTable{}, lex);
  CHECK(none[0] == CohesionLinks{});
}

TEST_CASE("title and heading mentions") {
  const auto doc = make_doc("d", "Parsing with Features",
                            {{"Features", {{"Parsing parsing is fun.", "Nothing relevant.", "Features once."}}}});
  CHECK(title_term_mentions(doc.sentences[0], doc) == 2);
  CHECK(title_term_mentions(doc.sentences[1], doc) == 0);
  CHECK(title_term_mentions(doc.sentences[2], doc) == 1);
}
