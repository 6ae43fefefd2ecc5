#include "salience/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "salience/error.hpp"
#include "salience/format.hpp"
#include "salience/user_focus.hpp"

namespace salience {

const std::array<FeatureInfo, kFeatureCount>& feature_table() {
  static const std::array<FeatureInfo, kFeatureCount> table{{
      {Feature::SentLocPara, "sent_loc_para", true, 1, 3, false},
      {Feature::ParaLocSection, "para_loc_section", true, 1, 3, false},
      {Feature::SentSpecialSection, "sent_special_section", true, 1, 3, false},
      {Feature::DepthSentSection, "depth_sent_section", true, 1, 4, false},
      {Feature::InHighestTf, "in_highest_tf", true, 0, 1, false},
      {Feature::InHighestTfIdf, "in_highest_tfidf", true, 0, 1, false},
      {Feature::InHighestG2, "in_highest_g2", true, 0, 1, false},
      {Feature::InHighestTitle, "in_highest_title", true, 0, 1, false},
      {Feature::InHighestPname, "in_highest_pname", true, 0, 1, false},
      {Feature::InHighestSyn, "in_highest_syn", true, 0, 1, false},
      {Feature::InHighestCooc, "in_highest_cooc", true, 0, 1, false},
      {Feature::KeywordCount, "keyword_count", false, 0, 1e9, true},
      {Feature::KeywordRatio, "keyword_ratio", false, 0, 1, true},
  }};
  return table;
}

const FeatureInfo& feature_info(Feature f) { return feature_table()[static_cast<std::size_t>(f)]; }

std::string_view feature_name(Feature f) { return feature_info(f).name; }

std::optional<Feature> parse_feature(std::string_view name) {
  for (const auto& info : feature_table()) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::vector<double> feature_domain(Feature f) {
  const auto& info = feature_info(f);
  if (!info.categorical) return {};
  std::vector<double> values;
  for (double v = info.min_value; v <= info.max_value; v += 1.0) values.push_back(v);
  return values;
}

bool FeatureVector::has(Feature f) const {
  switch (f) {
    case Feature::KeywordCount: return keyword_count.has_value();
    case Feature::KeywordRatio: return keyword_ratio.has_value();
    default: return true;
  }
}

double FeatureVector::value(Feature f) const {
  switch (f) {
    case Feature::SentLocPara: return sent_loc_para;
    case Feature::ParaLocSection: return para_loc_section;
    case Feature::SentSpecialSection: return sent_special_section;
    case Feature::DepthSentSection: return depth_sent_section;
    case Feature::InHighestTf: return in_highest_tf;
    case Feature::InHighestTfIdf: return in_highest_tfidf;
    case Feature::InHighestG2: return in_highest_g2;
    case Feature::InHighestTitle: return in_highest_title;
    case Feature::InHighestPname: return in_highest_pname;
    case Feature::InHighestSyn: return in_highest_syn;
    case Feature::InHighestCooc: return in_highest_cooc;
    case Feature::KeywordCount:
      if (!keyword_count) throw DataError("feature vector lacks keyword_count");
      return *keyword_count;
    case Feature::KeywordRatio:
      if (!keyword_ratio) throw DataError("feature vector lacks keyword_ratio");
      return *keyword_ratio;
  }
  throw DataError("unknown feature");
}

int thirds_position(std::size_t index, std::size_t total) {
  if (total == 0 || index < 1 || index > total) {
    throw DataError("position " + std::to_string(index) + " out of range 1.." + std::to_string(total));
  }
  const std::size_t third = (3 * index + total - 1) / total;
  return static_cast<int>(std::clamp<std::size_t>(third, 1, 3));
}

std::size_t top_count(double compression, std::size_t n) {
  if (!(compression > 0.0) || compression > 1.0) {
    throw ConfigError("compression must be in (0,1], got " + format_double(compression));
  }
  if (n == 0) return 0;
  // Products such as 0.3 * 10 land a hair above the integer; snap those.
  const double x = compression * static_cast<double>(n);
  const double nearest = std::round(x);
  const double k = std::fabs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, n);
}

std::vector<std::size_t> rank_descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<bool> filter1(std::span<const double> scores, double compression) {
  const std::size_t k = top_count(compression, scores.size());
  if (scores.empty()) throw DataError("filter1 needs at least one score");
  std::vector<bool> marks(scores.size(), false);
  const auto order = rank_descending(scores);
  for (std::size_t i = 0; i < k; ++i) marks[order[i]] = true;
  return marks;
}

SentenceScores sentence_scores(const Document& doc, const CorpusStats& stats,
                               const CooccurrenceTable& table, const SynonymLexicon& lex) {
  const DocumentTerms terms(doc);
  const std::size_t n = doc.sentences.size();
  SentenceScores out;
  out.avg_tf.resize(n);
  out.avg_tfidf.resize(n);
  out.avg_g2.resize(n);
  out.title_mentions.resize(n);
  out.name_mentions.resize(n);
  out.syn_links.resize(n);
  out.cooc_links.resize(n);

  std::unordered_map<std::string, double> g2_cache;
  auto g2_of = [&](const std::string& term) {
    const auto it = g2_cache.find(term);
    if (it != g2_cache.end()) return it->second;
    const double value = g2_score(term, terms, terms.total, stats);
    g2_cache.emplace(term, value);
    return value;
  };

  const auto links = cohesion_links(doc, table, lex);
  for (std::size_t i = 0; i < n; ++i) {
    const Sentence& s = doc.sentences[i];
    double tf = 0.0;
    double tfidf = 0.0;
    double g2 = 0.0;
    std::size_t content = 0;
    std::size_t names = 0;
    for (const auto& token : s.tokens) {
      if (token.is_name_mention) ++names;
      if (!token.is_content) continue;
      ++content;
      tf += tf_norm(token.normalized, terms);
      tfidf += tf_idf_weight(token.normalized, terms, stats);
      g2 += g2_of(token.normalized);
    }
    if (content > 0) {
      out.avg_tf[i] = tf / static_cast<double>(content);
      out.avg_tfidf[i] = tfidf / static_cast<double>(content);
      out.avg_g2[i] = g2 / static_cast<double>(content);
    }
    out.title_mentions[i] = static_cast<double>(title_term_mentions(s, doc));
    out.name_mentions[i] = static_cast<double>(names);
    out.syn_links[i] = static_cast<double>(links[i].syn_links);
    out.cooc_links[i] = static_cast<double>(links[i].cooc_links);
  }
  return out;
}

std::vector<FeatureVector> extract_features(const Document& doc, const CorpusStats& stats,
                                            const CooccurrenceTable& table, const SynonymLexicon& lex,
                                            const FeatureOptions& options, const KeywordMap* keywords) {
  if (!stats.has_document(doc.id)) {
    throw DataError("document \"" + doc.id + "\" is not covered by the corpus statistics");
  }
  if (doc.sentences.empty()) throw DataError("document \"" + doc.id + "\" has no sentences");
  top_count(options.compression, 1);  // validates the rate

  const auto scores = sentence_scores(doc, stats, table, lex);
  const auto tf = filter1(scores.avg_tf, options.compression);
  const auto tfidf = filter1(scores.avg_tfidf, options.compression);
  const auto g2 = filter1(scores.avg_g2, options.compression);
  const auto title = filter1(scores.title_mentions, options.compression);
  const auto pname = filter1(scores.name_mentions, options.compression);
  const auto syn = filter1(scores.syn_links, options.compression);
  const auto cooc = filter1(scores.cooc_links, options.compression);

  auto position = [&](std::size_t index0, std::size_t total) {
    if (total == 1 && options.single_unit_first) return 1;
    return thirds_position(index0 + 1, total);
  };

  std::vector<FeatureVector> vectors;
  vectors.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    const Section& section = doc.sections[s.section_index];
    const Paragraph& paragraph = section.paragraphs[s.paragraph_index];
    FeatureVector v;
    v.doc_id = doc.id;
    v.sent_index = s.doc_index;
    v.sent_loc_para = position(s.para_index, paragraph.sentences.size());
    v.para_loc_section = position(s.paragraph_index, section.paragraphs.size());
    switch (section.kind) {
      case SectionKind::Introduction: v.sent_special_section = 1; break;
      case SectionKind::Conclusion: v.sent_special_section = 2; break;
      case SectionKind::Other: v.sent_special_section = 3; break;
    }
    v.depth_sent_section = section.depth;
    const std::size_t i = s.doc_index;
    v.in_highest_tf = tf[i];
    v.in_highest_tfidf = tfidf[i];
    v.in_highest_g2 = g2[i];
    v.in_highest_title = title[i];
    v.in_highest_pname = pname[i];
    v.in_highest_syn = syn[i];
    v.in_highest_cooc = cooc[i];
    if (keywords != nullptr) {
      int count = 0;
      std::size_t content = 0;
      for (const auto& token : s.tokens) {
        if (!token.is_content) continue;
        ++content;
        if (keywords->contains(token.normalized)) ++count;
      }
      v.keyword_count = count;
      v.keyword_ratio = content == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(content);
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

// ---------------------------------------------------------------------------

std::string feature_tsv_header() {
  std::string header = "doc_id\tsent_index";
  for (const auto& info : feature_table()) {
    header += '\t';
    header += info.name;
  }
  header += "\tlabel";
  return header;
}

std::string to_tsv_row(const FeatureVector& v) {
  std::ostringstream row;
  row << v.doc_id << '\t' << v.sent_index << '\t' << v.sent_loc_para << '\t' << v.para_loc_section
      << '\t' << v.sent_special_section << '\t' << v.depth_sent_section << '\t' << v.in_highest_tf
      << '\t' << v.in_highest_tfidf << '\t' << v.in_highest_g2 << '\t' << v.in_highest_title << '\t'
      << v.in_highest_pname << '\t' << v.in_highest_syn << '\t' << v.in_highest_cooc << '\t';
  if (v.keyword_count) row << *v.keyword_count; else row << '-';
  row << '\t';
  if (v.keyword_ratio) row << format_double(*v.keyword_ratio); else row << '-';
  row << '\t';
  if (v.label) row << (*v.label ? 1 : 0); else row << '-';
  return row.str();
}

void write_feature_tsv(std::span<const FeatureVector> vectors, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write feature file: " + path.string());
  out << feature_tsv_header() << '\n';
  for (const auto& v : vectors) out << to_tsv_row(v) << '\n';
}

namespace {

int parse_int_field(const std::string& field, Feature f, std::size_t line_no) {
  const auto value = static_cast<double>(parse_count(field));
  const auto& info = feature_info(f);
  if (value < info.min_value || value > info.max_value) {
    throw DataError("feature file line " + std::to_string(line_no) + ": " + std::string(info.name) +
                    " out of range");
  }
  return static_cast<int>(value);
}

}  // namespace

std::vector<FeatureVector> parse_feature_tsv(std::string_view content) {
  std::istringstream in{std::string(content)};
  std::string line;
  if (!std::getline(in, line) || line != feature_tsv_header()) {
    throw DataError("feature file has an unexpected header");
  }
  std::vector<FeatureVector> vectors;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string field; std::getline(ls, field, '\t');) f.push_back(field);
    if (f.size() != 2 + kFeatureCount + 1) {
      throw DataError("feature file line " + std::to_string(line_no) + ": wrong column count");
    }
    FeatureVector v;
    v.doc_id = f[0];
    v.sent_index = parse_count(f[1]);
    v.sent_loc_para = parse_int_field(f[2], Feature::SentLocPara, line_no);
    v.para_loc_section = parse_int_field(f[3], Feature::ParaLocSection, line_no);
    v.sent_special_section = parse_int_field(f[4], Feature::SentSpecialSection, line_no);
    v.depth_sent_section = parse_int_field(f[5], Feature::DepthSentSection, line_no);
    v.in_highest_tf = parse_int_field(f[6], Feature::InHighestTf, line_no);
    v.in_highest_tfidf = parse_int_field(f[7], Feature::InHighestTfIdf, line_no);
    v.in_highest_g2 = parse_int_field(f[8], Feature::InHighestG2, line_no);
    v.in_highest_title = parse_int_field(f[9], Feature::InHighestTitle, line_no);
    v.in_highest_pname = parse_int_field(f[10], Feature::InHighestPname, line_no);
    v.in_highest_syn = parse_int_field(f[11], Feature::InHighestSyn, line_no);
    v.in_highest_cooc = parse_int_field(f[12], Feature::InHighestCooc, line_no);
    if ((f[13] == "-") != (f[14] == "-")) {
      throw DataError("feature file line " + std::to_string(line_no) +
                      ": keyword_count and keyword_ratio must both be present or absent");
    }
    if (f[13] != "-") {
      v.keyword_count = static_cast<int>(parse_count(f[13]));
      v.keyword_ratio = parse_double(f[14]);
    }
    if (f[15] == "1") v.label = true;
    else if (f[15] == "0") v.label = false;
    else if (f[15] != "-") throw DataError("feature file line " + std::to_string(line_no) + ": bad label");
    vectors.push_back(std::move(v));
  }
  return vectors;
}

std::vector<FeatureVector> read_feature_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing feature file " + path.string() + " (run the label step first)");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_feature_tsv(buffer.str());
}

}  // namespace salience
