#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "salience/error.hpp"
#include "salience/labeling.hpp"

using namespace salience;
using testing::flat_doc;

namespace {

std::vector<Sentence> sentences_of(const std::vector<std::string>& texts) {
  return flat_doc("tmp", texts).sentences;
}

FeatureVector vec(int tf, bool label, std::string doc = "d") {
  FeatureVector v;
  v.doc_id = std::move(doc);
  v.in_highest_tf = tf % 2;
  v.sent_loc_para = 1 + (tf / 2) % 3;
  v.depth_sent_section = 1 + (tf / 6) % 4;
  v.para_loc_section = 1 + (tf / 24) % 3;
  v.label = label;
  return v;
}

}  // namespace

TEST_CASE("similarity with uniform idf matches the hand-evaluated 1.5") {
  // Every term in every document: idf factor is exactly 1.
  std::vector<Document> docs = {flat_doc("x", {"pa pb pc."}), flat_doc("y", {"pa pb pc."})};
  const auto stats = build_corpus_stats(docs);
  const auto s1 = sentences_of({"pa pb."});
  const auto s2 = sentences_of({"pb pc."});
  CHECK(text_similarity(s1, s2, stats) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(text_similarity(s2, s1, stats) == text_similarity(s1, s2, stats));
  CHECK(text_similarity(s1, sentences_of({"q r."}), stats) == 0.0);
}

TEST_CASE("a sentence identical to the abstract scores N1 + 1") {
  std::vector<Document> docs = {flat_doc("x", {"alpha beta beta gamma."}), flat_doc("y", {"alpha delta."})};
  const auto stats = build_corpus_stats(docs);
  const auto s = sentences_of({"alpha beta beta gamma."});
  CHECK(sentence_abstract_similarity(s[0], s, stats) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("label_document picks the most similar sentences") {
  const std::vector<std::string> abstract = {"target words here."};
  auto doc = flat_doc("d", {"unrelated one.", "target words here.", "target only.", "other stuff.", "x.", "y.",
                            "z.", "w.", "v.", "u."},
                      &abstract);
  std::vector<Document> docs = {doc};
  const auto stats = build_corpus_stats(docs);
  auto labels = label_document(doc, stats, 0.2);
  CHECK(labels == std::vector<bool>{false, true, true, false, false, false, false, false, false, false});
  CHECK(std::count(labels.begin(), labels.end(), true) == 2);
  labels = label_document(doc, stats, 0.05);
  CHECK(std::count(labels.begin(), labels.end(), true) == 1);
  CHECK(labels[1]);
}

TEST_CASE("equal similarities fall back to sentence order") {
  const std::vector<std::string> abstract = {"nothing shared."};
  auto doc = flat_doc("d", {"ba.", "bb.", "bc.", "bd.", "be.", "bf.", "bg.", "bh.", "bi.", "bj."}, &abstract);
  std::vector<Document> docs = {doc};
  const auto stats = build_corpus_stats(docs);
  const auto labels = label_document(doc, stats, 0.2);
  CHECK(labels[0]);
  CHECK(labels[1]);
  CHECK(std::count(labels.begin(), labels.end(), true) == 2);
}

TEST_CASE("documents without an abstract cannot be labeled") {
  auto doc = flat_doc("d", {"word."});
  std::vector<Document> docs = {doc};
  CHECK_THROWS_AS(label_document(doc, build_corpus_stats(docs), 0.2), DataError);
}

TEST_CASE("deduplication collapses copies and balances negatives") {
  std::vector<FeatureVector> copies(100, vec(1, true));
  auto set = deduplicate_and_balance(copies, 1.0, 3);
  CHECK(set.n_raw == 100);
  CHECK(set.n_unique == 1);
  CHECK(set.vectors.size() == 1);

  std::vector<FeatureVector> mixed;
  for (int i = 0; i < 10; ++i) mixed.push_back(vec(i, true));
  for (int i = 10; i < 60; ++i) mixed.push_back(vec(i, false));
  for (int i = 10; i < 60; ++i) mixed.push_back(vec(i, false));  // duplicates
  for (const std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    set = deduplicate_and_balance(mixed, 1.0, seed);
    CHECK(set.n_positive == 10);
    CHECK(set.n_negative_sampled == 10);
    CHECK(set.vectors.size() == 20);
    CHECK(set.n_unique == 60);
    CHECK(set.vectors == deduplicate_and_balance(mixed, 1.0, seed).vectors);
  }
  set = deduplicate_and_balance(mixed, kDefaultNegRatio, 5);
  CHECK(set.n_negative_sampled == 12);  // ceil(10 * 214 / 182)

  std::vector<FeatureVector> negatives(5, vec(3, false));
  CHECK_THROWS_AS(deduplicate_and_balance(negatives, 1.0, 0), NumericError);
}

TEST_CASE("conflicting labels are kept once per label") {
  std::vector<FeatureVector> vs = {vec(4, true), vec(4, false), vec(4, false), vec(5, false)};
  const auto set = deduplicate_and_balance(vs, 5.0, 0);
  CHECK(set.n_conflicting == 1);
  CHECK(set.n_positive == 1);
  CHECK(set.n_negative_sampled == 2);
  CHECK(same_features(vs[0], vs[1]));
  CHECK_FALSE(same_features(vs[0], vs[3]));
}

TEST_CASE("labeled sets round-trip with their metadata") {
  std::vector<FeatureVector> vs;
  for (int i = 0; i < 30; ++i) vs.push_back(vec(i, i % 4 == 0, "doc" + std::to_string(i % 3)));
  const auto set = deduplicate_and_balance(vs, kDefaultNegRatio, 11);
  const auto path = std::filesystem::temp_directory_path() / "salience_labeled_rt.tsv";
  save_labeled_set(set, path);
  const auto back = load_labeled_set(path);
  CHECK(back.vectors == set.vectors);
  CHECK(back.n_raw == set.n_raw);
  CHECK(back.n_unique == set.n_unique);
  CHECK(back.rng_seed == 11);
  CHECK(back.neg_ratio == set.neg_ratio);
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta.json");
}
