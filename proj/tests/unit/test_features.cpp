#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "salience/error.hpp"
#include "salience/features.hpp"
#include "salience/user_focus.hpp"

using namespace salience;
using testing::make_doc;

TEST_CASE("thirds position uses the ceiling formula") {
  CHECK(thirds_position(1, 3) == 1);
  CHECK(thirds_position(2, 3) == 2);
  CHECK(thirds_position(3, 3) == 3);
  CHECK(thirds_position(1, 1) == 3);
  CHECK(thirds_position(2, 4) == 2);
  CHECK(thirds_position(1, 10) == 1);
  CHECK_THROWS_AS(thirds_position(0, 3), DataError);
  CHECK_THROWS_AS(thirds_position(4, 3), DataError);
}

TEST_CASE("top_count rounds up and validates the rate") {
  CHECK(top_count(0.05, 10) == 1);
  CHECK(top_count(0.2, 10) == 2);
  CHECK(top_count(0.3, 10) == 3);
  CHECK(top_count(0.1, 30) == 3);
  CHECK(top_count(0.01, 5) == 1);
  CHECK(top_count(1.0, 7) == 7);
  CHECK_THROWS_AS(top_count(0.0, 5), ConfigError);
  CHECK_THROWS_AS(top_count(1.5, 5), ConfigError);
}

TEST_CASE("filter1 examples") {
  const std::vector<double> a = {5, 3, 9, 1};
  CHECK(filter1(a, 0.25) == std::vector<bool>{false, false, true, false});
  const std::vector<double> equal = {2, 2, 2, 2};
  CHECK(filter1(equal, 0.5) == std::vector<bool>{true, true, false, false});
  CHECK(filter1(a, 1.0) == std::vector<bool>(4, true));
  CHECK_THROWS_AS(filter1(a, 0.0), ConfigError);
}

TEST_CASE("filter1 agrees with a sort-and-slice oracle") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<double> scores(n);
    for (auto& s : scores) s = static_cast<double>(gen() % 6);  // many ties
    const double c = (1 + gen() % 100) / 100.0;
    std::vector<std::pair<double, std::size_t>> sorted;
    for (std::size_t i = 0; i < n; ++i) sorted.emplace_back(-scores[i], i);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = std::min<std::size_t>(n, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c * n - 1e-9))));
    std::vector<bool> expected(n, false);
    for (std::size_t i = 0; i < k; ++i) expected[sorted[i].second] = true;
    REQUIRE(filter1(scores, c) == expected);
  }
}

namespace {

Document structured_doc() {
  return make_doc("d", "Robust Parsing",
                  {{"Introduction", {{"Robust parsing matters.", "Alpha beta gamma."}}},
                   {"Method", {{"We met John Smith here.", "Delta epsilon."}, {"Zeta eta."}, {"Theta iota."}}},
                   {"Details", {{"Kappa lambda."}}, 2},
                   {"Conclusion", {{"Parsing is robust.", "Mu nu."}}}});
}

}  // namespace

TEST_CASE("structural features") {
  const auto doc = structured_doc();
  std::vector<Document> docs = {doc};
  const auto stats = build_corpus_stats(docs);
  const auto vectors = extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, {});
  REQUIRE(vectors.size() == 9);
  CHECK(vectors[0].sent_special_section == 1);
  CHECK(vectors[2].sent_special_section == 3);
  CHECK(vectors[8].sent_special_section == 2);
  CHECK(vectors[2].para_loc_section == 1);  // first paragraph of three
  CHECK(vectors[4].para_loc_section == 2);
  CHECK(vectors[5].para_loc_section == 3);
  CHECK(vectors[2].depth_sent_section == 1);
  CHECK(vectors[6].depth_sent_section == 2);
  CHECK(vectors[6].sent_loc_para == 3);  // single-sentence paragraph
  CHECK(vectors[0].sent_loc_para == 2);  // ceil(3*1/2)
  CHECK(vectors[2].in_highest_pname == 1);
  CHECK(vectors[0].in_highest_title == 1);
  CHECK_FALSE(vectors[0].keyword_count.has_value());

  FeatureOptions first;
  first.single_unit_first = true;
  CHECK(extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, first)[6].sent_loc_para == 1);
}

TEST_CASE("every Filter 1 feature marks exactly ceil(c*N) sentences") {
  const auto doc = structured_doc();
  std::vector<Document> docs = {doc, testing::flat_doc("e", {"Alpha other words.", "More words."})};
  const auto stats = build_corpus_stats(docs);
  for (const double c : {0.05, 0.1, 0.2, 0.3, 1.0}) {
    FeatureOptions options;
    options.compression = c;
    const auto vectors = extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, options);
    for (const auto f : {Feature::InHighestTf, Feature::InHighestTfIdf, Feature::InHighestG2, Feature::InHighestTitle,
                         Feature::InHighestPname, Feature::InHighestSyn, Feature::InHighestCooc}) {
      double marked = 0;
      for (const auto& v : vectors) marked += v.value(f);
      CHECK(marked == static_cast<double>(top_count(c, vectors.size())));
    }
    CHECK(vectors == extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, options));
  }
}

TEST_CASE("keyword features count keyword tokens among content tokens") {
  const auto doc = testing::flat_doc("k", {"k1 k2 k3 k4 k5 o1 o2 o3 o4 o5.", "o6 o7."});
  std::vector<Document> docs = {doc};
  const auto stats = build_corpus_stats(docs);
  KeywordMap keywords;
  keywords.doc_id = "k";
  for (const auto* w : {"k1", "k2", "k3", "k4", "k5"}) keywords.weights[w] = 1.0;
  const auto vectors = extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, {}, &keywords);
  CHECK(*vectors[0].keyword_count == 5);
  CHECK(*vectors[0].keyword_ratio == 0.5);
  CHECK(*vectors[1].keyword_count == 0);
  CHECK(vectors[1].value(Feature::KeywordRatio) == 0.0);
}

TEST_CASE("documents outside the statistics are rejected") {
  const auto doc = structured_doc();
  std::vector<Document> other = {testing::flat_doc("x", {"words."})};
  const auto stats = build_corpus_stats(other);
  CHECK_THROWS_AS(extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, {}), DataError);
}

TEST_CASE("feature vectors round-trip through TSV") {
  const auto doc = structured_doc();
  std::vector<Document> docs = {doc};
  const auto stats = build_corpus_stats(docs);
  KeywordMap keywords;
  keywords.weights["parsing"] = 2.0;
  auto vectors = extract_features(doc, stats, CooccurrenceTable{}, SynonymLexicon{}, {}, &keywords);
  vectors[0].label = true;
  vectors[1].label = false;
  std::string tsv = feature_tsv_header() + "\n";
  for (const auto& v : vectors) tsv += to_tsv_row(v) + "\n";
  CHECK(parse_feature_tsv(tsv) == vectors);
  CHECK_THROWS_AS(parse_feature_tsv("bad header\n"), DataError);
  CHECK(feature_domain(Feature::DepthSentSection) == std::vector<double>{1, 2, 3, 4});
  CHECK(parse_feature("in_highest_title") == Feature::InHighestTitle);
  CHECK_FALSE(parse_feature("nope"));
}
