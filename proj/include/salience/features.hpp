#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salience/corpus_stats.hpp"
#include "salience/document.hpp"
#include "salience/term_stats.hpp"

namespace salience {

enum class Feature {
  SentLocPara,
  ParaLocSection,
  SentSpecialSection,
  DepthSentSection,
  InHighestTf,
  InHighestTfIdf,
  InHighestG2,
  InHighestTitle,
  InHighestPname,
  InHighestSyn,
  InHighestCooc,
  KeywordCount,
  KeywordRatio,
};

inline constexpr std::size_t kFeatureCount = 13;
inline constexpr std::size_t kGenericFeatureCount = 11;

struct FeatureInfo {
  Feature id;
  std::string_view name;
  bool categorical;
  double min_value;
  double max_value;
  bool user_focused;  // only present when keywords were supplied
};

const std::array<FeatureInfo, kFeatureCount>& feature_table();
const FeatureInfo& feature_info(Feature f);
std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view name);
// Values a categorical feature can take, ascending.
std::vector<double> feature_domain(Feature f);

struct FeatureVector {
  std::string doc_id;
  std::size_t sent_index = 0;
  int sent_loc_para = 1;
  int para_loc_section = 1;
  int sent_special_section = 3;
  int depth_sent_section = 1;
  int in_highest_tf = 0;
  int in_highest_tfidf = 0;
  int in_highest_g2 = 0;
  int in_highest_title = 0;
  int in_highest_pname = 0;
  int in_highest_syn = 0;
  int in_highest_cooc = 0;
  std::optional<int> keyword_count;
  std::optional<double> keyword_ratio;
  std::optional<bool> label;

  bool has(Feature f) const;
  // Throws DataError when the feature is absent from this vector.
  double value(Feature f) const;
  bool has_keyword_features() const { return keyword_count.has_value(); }

  bool operator==(const FeatureVector&) const = default;
};

// ceil(3 * index / total) clamped to [1,3]; index is 1-based.
int thirds_position(std::size_t index, std::size_t total);

// Number of items selected at a compression rate: ceil(c * n), never 0 for n > 0.
std::size_t top_count(double compression, std::size_t n);

// Marks the top ceil(c*N) scores; ties go to the earlier position.
std::vector<bool> filter1(std::span<const double> scores, double compression);

// Positions ordered by (score descending, position ascending).
std::vector<std::size_t> rank_descending(std::span<const double> scores);

// Per-sentence raw scores that Filter 1 discretizes.
struct SentenceScores {
  std::vector<double> avg_tf;
  std::vector<double> avg_tfidf;
  std::vector<double> avg_g2;
  std::vector<double> title_mentions;
  std::vector<double> name_mentions;
  std::vector<double> syn_links;
  std::vector<double> cooc_links;
};

SentenceScores sentence_scores(const Document& doc, const CorpusStats& stats,
                               const CooccurrenceTable& table, const SynonymLexicon& lex);

struct KeywordMap;

struct FeatureOptions {
  double compression = 0.2;
  // Position of a sentence in a single-unit container: 3 by the ceiling rule,
  // or 1 when this is set.
  bool single_unit_first = false;
};

std::vector<FeatureVector> extract_features(const Document& doc, const CorpusStats& stats,
                                            const CooccurrenceTable& table, const SynonymLexicon& lex,
                                            const FeatureOptions& options,
                                            const KeywordMap* keywords = nullptr);

// Tab-separated dump: doc_id, sent_index, the 13 features, label. Absent
// optional values are written as "-".
std::string feature_tsv_header();
std::string to_tsv_row(const FeatureVector& v);
void write_feature_tsv(std::span<const FeatureVector> vectors, const std::filesystem::path& path);
std::vector<FeatureVector> parse_feature_tsv(std::string_view content);
std::vector<FeatureVector> read_feature_tsv(const std::filesystem::path& path);

}  // namespace salience
