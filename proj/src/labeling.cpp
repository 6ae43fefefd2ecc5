#include "salience/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "salience/error.hpp"
#include "salience/rng.hpp"

namespace salience {

namespace {

std::map<std::string, double> side_weights(std::span<const Sentence> side, const CorpusStats& stats) {
  std::map<std::string, std::size_t> counts;
  std::size_t max_count = 0;
  for (const auto& s : side) {
    for (const auto& t : s.tokens) {
      if (t.is_content) max_count = std::max(max_count, ++counts[t.normalized]);
    }
  }
  std::map<std::string, double> weights;
  for (const auto& [term, count] : counts) {
    const double tf = static_cast<double>(count) / static_cast<double>(max_count);
    weights.emplace(term, tf * idf_factor(stats.n_docs, stats.document_frequency(term)));
  }
  return weights;
}

}  // namespace

double text_similarity(std::span<const Sentence> side_a, std::span<const Sentence> side_b,
                       const CorpusStats& stats) {
  const auto wa = side_weights(side_a, stats);
  const auto wb = side_weights(side_b, stats);
  std::size_t shared = 0;
  double dot = 0.0;
  for (const auto& [term, weight] : wa) {
    if (const auto it = wb.find(term); it != wb.end()) {
      ++shared;
      dot += weight * it->second;
    }
  }
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [term, weight] : wa) norm_a += weight * weight;
  for (const auto& [term, weight] : wb) norm_b += weight * weight;
  const double cosine = (norm_a > 0.0 && norm_b > 0.0) ? dot / std::sqrt(norm_a * norm_b) : 0.0;
  return static_cast<double>(shared) + cosine;
}

double sentence_abstract_similarity(const Sentence& sentence, std::span<const Sentence> abstract,
                                    const CorpusStats& stats) {
  if (abstract.empty()) throw DataError("cannot label against an empty abstract");
  return text_similarity(std::span<const Sentence>(&sentence, 1), abstract, stats);
}

std::vector<bool> label_document(const Document& doc, const CorpusStats& stats, double compression) {
  if (!doc.abstract || doc.abstract->empty()) {
    throw DataError("document \"" + doc.id + "\" has no abstract to label against");
  }
  std::vector<double> scores;
  scores.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    scores.push_back(sentence_abstract_similarity(s, *doc.abstract, stats));
  }
  return filter1(scores, compression);
}

// ---------------------------------------------------------------------------

namespace {

using FeatureKey = std::tuple<int, int, int, int, int, int, int, int, int, int, int, std::optional<int>,
                              std::optional<double>>;

FeatureKey key_of(const FeatureVector& v) {
  return {v.sent_loc_para,    v.para_loc_section, v.sent_special_section, v.depth_sent_section,
          v.in_highest_tf,    v.in_highest_tfidf, v.in_highest_g2,        v.in_highest_title,
          v.in_highest_pname, v.in_highest_syn,   v.in_highest_cooc,      v.keyword_count,
          v.keyword_ratio};
}

std::size_t ceil_count(double x) {
  const double nearest = std::round(x);
  return static_cast<std::size_t>(std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x));
}

}  // namespace

bool same_features(const FeatureVector& a, const FeatureVector& b) { return key_of(a) == key_of(b); }

LabeledSet deduplicate_and_balance(std::span<const FeatureVector> vectors, double neg_ratio,
                                   std::uint64_t seed) {
  if (!(neg_ratio > 0.0)) throw ConfigError("neg_ratio must be positive");
  LabeledSet set;
  set.n_raw = vectors.size();
  set.neg_ratio = neg_ratio;
  set.rng_seed = seed;

  std::set<std::pair<FeatureKey, bool>> seen;
  std::map<FeatureKey, unsigned> label_mask;
  std::vector<const FeatureVector*> positives;
  std::vector<const FeatureVector*> negatives;
  for (const auto& v : vectors) {
    if (!v.label) throw DataError("cannot balance unlabeled vector " + v.doc_id + "#" + std::to_string(v.sent_index));
    const auto key = key_of(v);
    if (!seen.emplace(key, *v.label).second) continue;
    label_mask[key] |= *v.label ? 2u : 1u;
    (*v.label ? positives : negatives).push_back(&v);
  }
  set.n_unique = positives.size() + negatives.size();
  set.n_conflicting = static_cast<std::size_t>(
      std::count_if(label_mask.begin(), label_mask.end(), [](const auto& kv) { return kv.second == 3u; }));
  if (positives.empty()) throw NumericError("training data contains no positive examples");

  const std::size_t wanted = std::min(negatives.size(), ceil_count(neg_ratio * static_cast<double>(positives.size())));
  std::vector<std::size_t> picks(negatives.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(picks));
  picks.resize(wanted);
  std::sort(picks.begin(), picks.end());

  set.n_positive = positives.size();
  set.n_negative_sampled = wanted;
  set.vectors.reserve(positives.size() + wanted);
  for (const auto* v : positives) set.vectors.push_back(*v);
  for (const auto i : picks) set.vectors.push_back(*negatives[i]);
  return set;
}

void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path) {
  write_feature_tsv(set.vectors, path);
  nlohmann::json meta;
  meta["n_raw"] = set.n_raw;
  meta["n_unique"] = set.n_unique;
  meta["n_positive"] = set.n_positive;
  meta["n_negative_sampled"] = set.n_negative_sampled;
  meta["n_conflicting"] = set.n_conflicting;
  meta["neg_ratio"] = set.neg_ratio;
  meta["seed"] = set.rng_seed;
  std::ofstream out(path.string() + ".meta.json", std::ios::binary);
  if (!out) throw ConfigError("cannot write labeled-set metadata for " + path.string());
  out << meta.dump(2) << '\n';
}

LabeledSet load_labeled_set(const std::filesystem::path& path) {
  LabeledSet set;
  set.vectors = read_feature_tsv(path);
  std::ifstream in(path.string() + ".meta.json", std::ios::binary);
  if (in) {
    try {
      const auto meta = nlohmann::json::parse(in);
      set.n_raw = meta.at("n_raw").get<std::size_t>();
      set.n_unique = meta.at("n_unique").get<std::size_t>();
      set.n_positive = meta.at("n_positive").get<std::size_t>();
      set.n_negative_sampled = meta.at("n_negative_sampled").get<std::size_t>();
      set.n_conflicting = meta.value("n_conflicting", std::size_t{0});
      set.neg_ratio = meta.at("neg_ratio").get<double>();
      set.rng_seed = meta.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ".meta.json: " + e.what());
    }
  } else {
    set.n_raw = set.n_unique = set.vectors.size();
    for (const auto& v : set.vectors) {
      if (v.label && *v.label) ++set.n_positive; else ++set.n_negative_sampled;
    }
  }
  for (const auto& v : set.vectors) {
    if (!v.label) throw DataError(path.string() + ": training vectors must be labeled");
  }
  return set;
}

}  // namespace salience
