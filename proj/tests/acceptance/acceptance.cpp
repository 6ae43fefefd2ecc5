// One line per criterion: "criterion N: PASS|FAIL  <detail>". Exit status is
// the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "json.hpp"
#include "salience/error.hpp"
#include "salience/evaluation.hpp"
#include "salience/format.hpp"
#include "salience/labeling.hpp"
#include "salience/learners.hpp"
#include "salience/synth.hpp"
#include "salience/term_stats.hpp"

using namespace salience;

namespace {

// Pinned tolerances and thresholds.
constexpr double kFormulaTol = 1e-9;     // relative, criterion 1
constexpr double kMetricTol = 1e-12;     // absolute, criterion 3
constexpr double kFormulaBudgetSec = 5.0;
constexpr double kLeadBiasMinF = 0.9;
constexpr double kUserGainMin = 0.15;
constexpr double kSweepMaxFRange = 0.1;
constexpr double kSweepMinOverlap = 0.5;
constexpr double kMaxMeanConditions = 4.0;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
  if (!pass) ++failures;
}

bool close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// ---------------------------------------------------------------------------
// Random corpora with known token lists.

using Words = std::vector<std::string>;

struct RawDoc {
  std::vector<Words> sentences;
  Words abstract;
};

std::string vocab_word(std::size_t i) {
  static const char* letters = "bcdfghjkmnpqrstvwxz";
  std::string w = "q";
  do {
    w += letters[i % 19];
    i /= 19;
  } while (i > 0);
  return w;
}

Words random_words(std::mt19937_64& gen, std::size_t vocab, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> len(lo, hi);
  // Skewed draw so counts and ties vary.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Words out(len(gen));
  for (auto& w : out) w = vocab_word(static_cast<std::size_t>(std::pow(u(gen), 2.0) * static_cast<double>(vocab)));
  return out;
}

std::string sentence_text(const Words& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s + ".";
}

Document to_document(const RawDoc& raw, const std::string& id) {
  std::vector<std::string> text;
  for (const auto& s : raw.sentences) text.push_back(sentence_text(s));
  std::vector<std::string> abstract;
  if (!raw.abstract.empty()) abstract.push_back(sentence_text(raw.abstract));
  return testing::make_doc(id, "Untitled", {{"Body", {text}}}, raw.abstract.empty() ? nullptr : &abstract);
}

RawDoc random_raw_doc(std::mt19937_64& gen, std::size_t vocab, std::size_t min_sent, std::size_t max_sent) {
  RawDoc d;
  std::uniform_int_distribution<std::size_t> n(min_sent, max_sent);
  const std::size_t count = n(gen);
  for (std::size_t i = 0; i < count; ++i) d.sentences.push_back(random_words(gen, vocab, 1, 9));
  d.abstract = random_words(gen, vocab, 3, 15);
  return d;
}

// ---------------------------------------------------------------------------
// Oracles written from the raw token lists.

double xlx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Entropy form: 2 * (sum xlx(cells) - sum xlx(rows) - sum xlx(cols) + xlx(N)).
double oracle_g2(double k_doc, double n_doc, double k_corpus, double n_corpus) {
  if (k_doc / n_doc <= k_corpus / n_corpus) return 0.0;
  const double a = k_doc, b = k_corpus - k_doc, c = n_doc - k_doc, d = n_corpus - n_doc - b;
  const double g = xlx(a) + xlx(b) + xlx(c) + xlx(d) - xlx(a + b) - xlx(c + d) - xlx(a + c) - xlx(b + d) +
                   xlx(a + b + c + d);
  return std::max(0.0, 2.0 * g);
}

std::map<std::string, double> oracle_side(const std::vector<const Words*>& side,
                                          const std::function<double(const std::string&)>& idf) {
  std::map<std::string, double> counts;
  for (const auto* words : side) {
    for (const auto& w : *words) counts[w] += 1.0;
  }
  double top = 0.0;
  for (const auto& [w, c] : counts) top = std::max(top, c);
  for (auto& [w, c] : counts) c = c / top * idf(w);
  return counts;
}

double oracle_similarity(const Words& a, const Words& b, const std::function<double(const std::string&)>& idf) {
  const auto wa = oracle_side({&a}, idf);
  const auto wb = oracle_side({&b}, idf);
  double shared = 0.0, dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [w, x] : wa) {
    na += x * x;
    if (wb.count(w)) {
      shared += 1.0;
      dot += x * wb.at(w);
    }
  }
  for (const auto& [w, y] : wb) nb += y * y;
  return shared + ((na > 0.0 && nb > 0.0) ? dot / (std::sqrt(na) * std::sqrt(nb)) : 0.0);
}

void criterion_1() {
  std::mt19937_64 gen(kSeed);
  const auto start = std::chrono::steady_clock::now();
  std::size_t bad_tfidf = 0, bad_g2 = 0, bad_mi = 0, bad_sim = 0;
  const std::size_t trials = 1000;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t vocab = 5 + gen() % 40;
    const std::size_t n_docs = 2 + gen() % 5;
    std::vector<RawDoc> raws;
    std::vector<Document> docs;
    for (std::size_t d = 0; d < n_docs; ++d) {
      raws.push_back(random_raw_doc(gen, vocab, 1, 6));
      docs.push_back(to_document(raws.back(), "d" + std::to_string(d)));
    }
    const auto stats = build_corpus_stats(docs);

    std::map<std::string, double> df, corpus_count;
    double corpus_total = 0.0;
    for (const auto& raw : raws) {
      std::set<std::string> seen;
      for (const auto& s : raw.sentences) {
        for (const auto& w : s) {
          seen.insert(w);
          corpus_count[w] += 1.0;
          corpus_total += 1.0;
        }
      }
      for (const auto& w : seen) df[w] += 1.0;
    }
    const auto idf = [&](const std::string& w) {
      const double f = df.count(w) ? df.at(w) : 0.0;
      return f == 0.0 ? 0.0 : 1.0 + std::log(static_cast<double>(n_docs) / f);
    };

    const std::size_t di = gen() % n_docs;
    const auto& raw = raws[di];
    std::vector<const Words*> all;
    for (const auto& s : raw.sentences) all.push_back(&s);
    std::map<std::string, double> counts;
    double doc_total = 0.0;
    for (const auto* s : all) {
      for (const auto& w : *s) {
        counts[w] += 1.0;
        doc_total += 1.0;
      }
    }
    double top = 0.0;
    for (const auto& [w, c] : counts) top = std::max(top, c);
    const std::string term = vocab_word(gen() % vocab);
    const double tf = counts.count(term) ? counts.at(term) : 0.0;

    if (!close(tf_idf_weight(term, docs[di], stats), tf / top * idf(term), kFormulaTol)) ++bad_tfidf;
    const double cc = corpus_count.count(term) ? corpus_count.at(term) : 0.0;
    if (!close(g2_score(term, docs[di], stats), oracle_g2(tf, doc_total, cc, corpus_total), kFormulaTol)) ++bad_g2;

    const std::size_t n = 10 + gen() % 100000;
    const std::size_t ta = 1 + gen() % 500, tb = 1 + gen() % 500;
    const std::size_t pair = 1 + gen() % std::min(ta, tb);
    const double mi = std::log(static_cast<double>(n)) + std::log(static_cast<double>(pair)) -
                      std::log(static_cast<double>(ta)) - std::log(static_cast<double>(tb));
    if (!close(mutual_information(n, pair, ta, tb), mi, kFormulaTol)) ++bad_mi;

    const std::size_t si = gen() % raw.sentences.size();
    const double sim = sentence_abstract_similarity(docs[di].sentences[si], *docs[di].abstract, stats);
    if (!close(sim, oracle_similarity(raw.sentences[si], raw.abstract, idf), kFormulaTol)) ++bad_sim;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = bad_tfidf + bad_g2 + bad_mi + bad_sim == 0 && secs < kFormulaBudgetSec;
  std::ostringstream d;
  d << trials << " inputs; mismatches tf.idf " << bad_tfidf << ", G2 " << bad_g2 << ", MI " << bad_mi
    << ", similarity " << bad_sim << "; " << format_double(std::round(secs * 1000) / 1000) << " s";
  report(1, pass, d.str());
}

// ---------------------------------------------------------------------------

std::vector<bool> sort_slice(const std::vector<double>& scores, double c) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const double raw = c * static_cast<double>(scores.size());
  double k = std::ceil(raw);
  if (std::abs(raw - std::round(raw)) < 1e-9) k = std::round(raw);
  k = std::clamp(k, 1.0, static_cast<double>(scores.size()));
  std::vector<bool> out(scores.size(), false);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) out[order[i]] = true;
  return out;
}

void criterion_2() {
  std::mt19937_64 gen(kSeed + 2);
  std::size_t bad_filter = 0, bad_label = 0, checks = 0;
  const std::vector<double> rates = {0.05, 0.1, 0.2, 0.3};
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 500; ++i) docs.push_back(to_document(random_raw_doc(gen, 30, 1, 40), "r" + std::to_string(i)));
  const auto stats = build_corpus_stats(docs);
  for (const auto& doc : docs) {
    std::vector<double> sim;
    for (const auto& s : doc.sentences) sim.push_back(sentence_abstract_similarity(s, *doc.abstract, stats));
    std::vector<double> random_scores(doc.sentences.size());
    for (auto& x : random_scores) x = static_cast<double>(gen() % 5);
    for (const double c : rates) {
      ++checks;
      if (filter1(random_scores, c) != sort_slice(random_scores, c)) ++bad_filter;
      if (label_document(doc, stats, c) != sort_slice(sim, c)) ++bad_label;
    }
  }
  std::ostringstream d;
  d << checks << " document x rate cases; selection mismatches " << bad_filter << ", label mismatches "
    << bad_label;
  report(2, bad_filter + bad_label == 0, d.str());
}

// ---------------------------------------------------------------------------

void criterion_3() {
  std::mt19937_64 gen(kSeed + 3);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    // Small counts so zero rows and columns occur often.
    const std::size_t cap = (i % 4 == 0) ? 3 : 200;
    Confusion c{gen() % cap, gen() % cap, gen() % cap, gen() % cap};
    if (c.total() == 0) c.tn = 1;
    const double tp = c.tp, fp = c.fp, fn = c.fn, tn = c.tn;
    const double acc = (tp + tn) / (tp + fp + fn + tn);
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const auto m = metrics(c);
    if (std::abs(m.accuracy - acc) > kMetricTol || std::abs(m.precision - p) > kMetricTol ||
        std::abs(m.recall - r) > kMetricTol || std::abs(m.f_score - f) > kMetricTol) {
      ++bad;
    }
  }
  report(3, bad == 0, "10000 confusion matrices; mismatches " + std::to_string(bad));
}

// ---------------------------------------------------------------------------

CorpusResources synth(SynthProfile profile, std::size_t n_docs, std::uint64_t seed) {
  SynthParams params;
  params.profile = profile;
  params.n_docs = n_docs;
  params.seed = seed;
  const auto corpus = generate_corpus(params);
  auto r = testing::synth_resources(corpus);
  if (profile == SynthProfile::KeywordPlanted) attach_user_interest(r, corpus.interest_ids);
  return r;
}

EvalConfig eval_config(LearnerKind learner, Mode mode) {
  EvalConfig config;
  config.learner = learner;
  config.mode = mode;
  config.seed = kSeed;
  return config;
}

const std::vector<LearnerKind> kLearners = {LearnerKind::Linear, LearnerKind::Tree, LearnerKind::Covering};

void criterion_4() {
  const auto r = synth(SynthProfile::LeadBias, 50, kSeed);
  bool pass = true;
  std::string detail = "lead-bias, 50 docs, 10-fold F:";
  for (const auto learner : kLearners) {
    const auto report = cross_validate(r, eval_config(learner, Mode::Generic));
    pass = pass && report.mean.f_score >= kLeadBiasMinF;
    detail += " " + std::string(to_string(learner)) + " " + format_double(std::round(report.mean.f_score * 1e4) / 1e4);
  }
  report(4, pass, detail + " (min " + format_double(kLeadBiasMinF) + ")");
}

void criterion_5() {
  const auto r = synth(SynthProfile::KeywordPlanted, 60, kSeed);
  bool pass = true;
  std::string detail = "keyword-planted, 60 docs, user - generic F:";
  for (const auto learner : kLearners) {
    const double generic = cross_validate(r, eval_config(learner, Mode::Generic)).mean.f_score;
    const double user = cross_validate(r, eval_config(learner, Mode::User)).mean.f_score;
    pass = pass && user - generic >= kUserGainMin;
    detail += " " + std::string(to_string(learner)) + " " + format_double(std::round((user - generic) * 1e4) / 1e4);
  }
  report(5, pass, detail + " (min " + format_double(kUserGainMin) + ")");
}

void criterion_6() {
  const auto r = synth(SynthProfile::Mixed, 50, kSeed);
  const std::vector<double> rates = {0.05, 0.1, 0.2, 0.3};
  const auto sweep = compression_sweep(r, eval_config(LearnerKind::Tree, Mode::Generic), rates);
  const double min_overlap = sweep.adjacent_overlap.empty()
                                 ? 0.0
                                 : *std::min_element(sweep.adjacent_overlap.begin(), sweep.adjacent_overlap.end());
  const bool pass = sweep.f_range <= kSweepMaxFRange && min_overlap >= kSweepMinOverlap &&
                    sweep.adjacent_overlap.size() == rates.size() - 1;
  report(6, pass,
         "mixed, 50 docs, tree at 5/10/20/30%: F range " + format_double(std::round(sweep.f_range * 1e4) / 1e4) +
             " (max " + format_double(kSweepMaxFRange) + "), min adjacent rule overlap " +
             format_double(std::round(min_overlap * 1e4) / 1e4) + " (min " + format_double(kSweepMinOverlap) + ")");
}

void criterion_7() {
  const auto r = synth(SynthProfile::Mixed, 30, kSeed + 7);
  bool pass = true;
  for (const auto learner : kLearners) {
    auto config = eval_config(learner, Mode::Generic);
    const auto a = cross_validate(r, config);
    const auto b = cross_validate(r, config);
    pass = pass && a.integrity.folds_disjoint && a.integrity.folds_cover_corpus && a.integrity.no_leakage;
    pass = pass && report_to_json(a) == report_to_json(b) && report_to_tsv(a) == report_to_tsv(b);
  }
  report(7, pass, "folds disjoint, cover the corpus, no leakage; repeated runs give byte-identical reports");
}

// ---------------------------------------------------------------------------

void criterion_8() {
  const auto r = synth(SynthProfile::KeywordPlanted, 30, kSeed + 8);
  PrepareOptions options;
  options.mode = Mode::User;
  const auto prepared = prepare_documents(r, options);
  const auto all = flatten(prepared);
  const auto set = training_set(prepared, kDefaultNegRatio, kSeed);
  std::size_t compared = 0, differing = 0;
  bool text_stable = true;
  for (const auto learner : kLearners) {
    const auto model = train_model(learner, set);
    const auto json = model_to_json(model);
    const auto back = model_from_json(json);
    text_stable = text_stable && model_to_json(back) == json;
    for (const auto& v : all) {
      ++compared;
      if (classify(model, v) != classify(back, v)) ++differing;
    }
  }
  report(8, differing == 0 && text_stable,
         "linear, tree, covering: " + std::to_string(compared) + " classifications after reload, " +
             std::to_string(differing) + " differ");
}

// Applies a JSON rule list directly: first covering rule wins.
Label json_classify(const nlohmann::json& model, const FeatureVector& v) {
  for (const auto& rule : model["rules"]) {
    bool covers = true;
    for (const auto& c : rule["conditions"]) {
      const double x = v.value(*parse_feature(c["feature"].get<std::string>()));
      const auto test = c["test"].get<std::string>();
      const auto args = c["args"].get<std::vector<double>>();
      bool holds = false;
      if (test == "equals") holds = x == args[0];
      else if (test == "in") holds = std::find(args.begin(), args.end(), x) != args.end();
      else if (test == "le") holds = x <= args[0];
      else if (test == "ge") holds = x >= args[0];
      else if (test == "between") holds = x >= args[0] && x <= args[1];
      covers = covers && holds;
    }
    if (covers) return *parse_label(rule["class"].get<std::string>());
  }
  return *parse_label(model["default_class"].get<std::string>());
}

void criterion_9() {
  struct Case {
    SynthProfile profile;
    Mode mode;
  };
  double sum_conditions = 0.0;
  std::size_t n_rules = 0, edits = 0, edit_mismatch = 0, changed = 0;
  for (const auto& [profile, mode] : {Case{SynthProfile::LeadBias, Mode::Generic},
                                      Case{SynthProfile::KeywordPlanted, Mode::User},
                                      Case{SynthProfile::Mixed, Mode::Generic}}) {
    const auto r = synth(profile, 30, kSeed + 9);
    PrepareOptions options;
    options.mode = mode;
    const auto prepared = prepare_documents(r, options);
    const auto all = flatten(prepared);
    const auto set = training_set(prepared, kDefaultNegRatio, kSeed);
    for (const auto learner : {LearnerKind::Tree, LearnerKind::Covering}) {
      const auto model = train_model(learner, set);
      const auto& rules = std::get<RuleSet>(model);
      for (const auto& rule : rules.rules) sum_conditions += static_cast<double>(rule.conditions.size());
      n_rules += rules.rules.size();

      const auto json = nlohmann::json::parse(model_to_json(model));
      for (std::size_t drop = 0; drop < json["rules"].size(); ++drop) {
        auto edited = json;
        edited["rules"].erase(drop);
        const auto reloaded = model_from_json(edited.dump());
        ++edits;
        bool any_change = false;
        for (const auto& v : all) {
          const Label expected = json_classify(edited, v);
          if (classify(reloaded, v) != expected) ++edit_mismatch;
          any_change = any_change || expected != classify(model, v);
        }
        changed += any_change ? 1 : 0;
      }
    }
  }
  const double mean = n_rules == 0 ? 0.0 : sum_conditions / static_cast<double>(n_rules);
  const bool pass = n_rules > 0 && mean <= kMaxMeanConditions && edits > 0 && edit_mismatch == 0 && changed > 0;
  std::ostringstream d;
  d << n_rules << " rules, " << format_double(std::round(mean * 100) / 100) << " conditions per rule (max "
    << format_double(kMaxMeanConditions) << "); " << edits << " single-rule deletions, " << changed
    << " change predictions, " << edit_mismatch << " disagree with the edited rules";
  report(9, pass, d.str());
}

}  // namespace

int main() {
  set_warnings_enabled(false);
  const std::vector<std::function<void()>> criteria = {criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  return failures;
}
