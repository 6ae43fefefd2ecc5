#include "salience/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "salience/error.hpp"
#include "salience/format.hpp"
#include "salience/rng.hpp"

namespace salience {

void Confusion::add(Label predicted, Label actual) {
  if (actual == Label::Summary) {
    (predicted == Label::Summary ? tp : fn) += 1;
  } else {
    (predicted == Label::Summary ? fp : tn) += 1;
  }
}

Metrics metrics(const Confusion& c) {
  if (c.total() == 0) throw DataError("cannot compute metrics on an empty test set");
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  m.precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  m.recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  m.f_score = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LabeledSet training_set(std::span<const PreparedDoc> docs, double neg_ratio, std::uint64_t seed) {
  const auto vectors = flatten(docs);
  return deduplicate_and_balance(vectors, neg_ratio, seed);
}

namespace {

enum : std::uint64_t { kShuffleStream = 1, kBalanceStream = 100, kTestBalanceStream = 200, kSweepStream = 300 };

std::vector<std::vector<std::size_t>> make_folds(std::size_t n_docs, std::size_t folds, std::uint64_t seed) {
  std::vector<std::size_t> order(n_docs);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, kShuffleStream));
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t begin = f * n_docs / folds;
    const std::size_t end = (f + 1) * n_docs / folds;
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

Metrics mean_of(const std::vector<Metrics>& ms) {
  Metrics m;
  for (const auto& x : ms) {
    m.accuracy += x.accuracy;
    m.precision += x.precision;
    m.recall += x.recall;
    m.f_score += x.f_score;
  }
  const double n = static_cast<double>(std::max<std::size_t>(1, ms.size()));
  m.accuracy /= n;
  m.precision /= n;
  m.recall /= n;
  m.f_score /= n;
  return m;
}

Metrics stddev_of(const std::vector<Metrics>& ms, const Metrics& mean) {
  Metrics s;
  for (const auto& x : ms) {
    s.accuracy += (x.accuracy - mean.accuracy) * (x.accuracy - mean.accuracy);
    s.precision += (x.precision - mean.precision) * (x.precision - mean.precision);
    s.recall += (x.recall - mean.recall) * (x.recall - mean.recall);
    s.f_score += (x.f_score - mean.f_score) * (x.f_score - mean.f_score);
  }
  const double n = static_cast<double>(std::max<std::size_t>(1, ms.size()));
  s.accuracy = std::sqrt(s.accuracy / n);
  s.precision = std::sqrt(s.precision / n);
  s.recall = std::sqrt(s.recall / n);
  s.f_score = std::sqrt(s.f_score / n);
  return s;
}

// Trains on `train_docs` and scores every vector of `test_docs`.
FoldResult run_fold(std::span<const PreparedDoc> docs, const std::vector<std::size_t>& train_docs,
                    const std::vector<std::size_t>& test_docs, const EvalConfig& config, std::size_t fold) {
  std::vector<PreparedDoc> train;
  std::set<std::string> train_ids;
  for (const auto i : train_docs) {
    train.push_back(docs[i]);
    train_ids.insert(docs[i].doc_id);
  }
  FoldResult result;
  result.fold = fold;
  const auto labeled = training_set(train, config.neg_ratio, derive_seed(config.seed, kBalanceStream + fold));
  result.n_train = labeled.vectors.size();
  for (const auto& v : labeled.vectors) {
    if (std::find_if(test_docs.begin(), test_docs.end(),
                     [&](std::size_t t) { return docs[t].doc_id == v.doc_id; }) != test_docs.end()) {
      throw DataError("fold " + std::to_string(fold) + ": test document " + v.doc_id + " leaked into training");
    }
  }
  const Model model = train_model(config.learner, labeled, config.learner_params);

  std::vector<FeatureVector> test;
  for (const auto i : test_docs) {
    if (train_ids.count(docs[i].doc_id) != 0) {
      throw DataError("fold " + std::to_string(fold) + ": document " + docs[i].doc_id + " is in both splits");
    }
    result.test_doc_ids.push_back(docs[i].doc_id);
    test.insert(test.end(), docs[i].vectors.begin(), docs[i].vectors.end());
  }
  if (config.balance_test) {
    test = deduplicate_and_balance(test, config.neg_ratio, derive_seed(config.seed, kTestBalanceStream + fold)).vectors;
  }
  for (const auto& v : test) result.confusion.add(classify(model, v), to_label(v.label.value_or(false)));
  result.metrics = metrics(result.confusion);
  return result;
}

}  // namespace

EvalReport cross_validate(std::span<const PreparedDoc> docs, const EvalConfig& config) {
  if (config.folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (docs.size() < config.folds) {
    throw ConfigError("cross-validation needs at least " + std::to_string(config.folds) + " documents, got " +
                      std::to_string(docs.size()));
  }
  EvalReport report;
  report.config = config;
  const auto folds = make_folds(docs.size(), config.folds, config.seed);

  std::vector<std::size_t> seen(docs.size(), 0);
  for (const auto& fold : folds) {
    for (const auto i : fold) ++seen[i];
  }
  report.integrity.folds_disjoint = std::all_of(seen.begin(), seen.end(), [](std::size_t s) { return s <= 1; });
  report.integrity.folds_cover_corpus = std::all_of(seen.begin(), seen.end(), [](std::size_t s) { return s >= 1; });

  std::vector<Metrics> per_run;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_docs;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train_docs.insert(train_docs.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_docs.begin(), train_docs.end());
    report.runs.push_back(run_fold(docs, train_docs, folds[f], config, f));
    per_run.push_back(report.runs.back().metrics);
  }
  // run_fold throws on any leak, so reaching here means none occurred.
  report.integrity.no_leakage = true;
  report.mean = mean_of(per_run);
  report.stddev = stddev_of(per_run, report.mean);
  return report;
}

EvalReport cross_validate(const CorpusResources& resources, const EvalConfig& config, const FeatureOptions& features) {
  PrepareOptions options;
  options.mode = config.mode;
  options.features = features;
  options.features.compression = config.compression;
  const auto prepared = prepare_documents(resources, options);
  return cross_validate(prepared, config);
}

std::vector<CurvePoint> learning_curve(std::span<const PreparedDoc> docs, const EvalConfig& config,
                                       std::span<const double> fractions) {
  if (docs.size() < config.folds) throw ConfigError("not enough documents for the learning curve");
  const auto folds = make_folds(docs.size(), config.folds, config.seed);
  std::vector<CurvePoint> curve;
  for (const double fraction : fractions) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("learning-curve fractions must be in (0,1]");
    std::vector<Metrics> per_run;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      // Training documents in shuffled fold order, so prefixes are random subsets.
      std::vector<std::size_t> train_docs;
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) train_docs.insert(train_docs.end(), folds[g].begin(), folds[g].end());
      }
      train_docs.resize(top_count(fraction, train_docs.size()));
      try {
        per_run.push_back(run_fold(docs, train_docs, folds[f], config, f).metrics);
      } catch (const NumericError&) {
        // Tiny prefixes can lack positives; such runs are skipped.
      }
    }
    curve.push_back({fraction, mean_of(per_run)});
  }
  return curve;
}

SweepResult compression_sweep(const CorpusResources& resources, const EvalConfig& config,
                              std::span<const double> compressions, const FeatureOptions& features) {
  SweepResult sweep;
  double f_min = 1.0;
  double f_max = 0.0;
  for (const double c : compressions) {
    EvalConfig at = config;
    at.compression = c;
    PrepareOptions options;
    options.mode = config.mode;
    options.features = features;
    options.features.compression = c;
    const auto prepared = prepare_documents(resources, options);
    sweep.reports.push_back(cross_validate(prepared, at));
    const auto full = training_set(prepared, config.neg_ratio, derive_seed(config.seed, kSweepStream));
    sweep.models.push_back(train_model(config.learner, full, config.learner_params));
    f_min = std::min(f_min, sweep.reports.back().mean.f_score);
    f_max = std::max(f_max, sweep.reports.back().mean.f_score);
  }
  sweep.f_range = compressions.empty() ? 0.0 : f_max - f_min;
  for (std::size_t i = 1; i < sweep.models.size(); ++i) {
    const auto* a = std::get_if<RuleSet>(&sweep.models[i - 1]);
    const auto* b = std::get_if<RuleSet>(&sweep.models[i]);
    if (a != nullptr && b != nullptr) sweep.adjacent_overlap.push_back(rule_overlap(*a, *b));
  }
  return sweep;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json metrics_json(const Metrics& m) {
  return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f_score", m.f_score}};
}

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json root;
  root["config"] = {{"learner", std::string(to_string(report.config.learner))},
                    {"mode", std::string(to_string(report.config.mode))},
                    {"compression", report.config.compression},
                    {"seed", report.config.seed},
                    {"folds", report.config.folds},
                    {"neg_ratio", report.config.neg_ratio},
                    {"balance_test", report.config.balance_test}};
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : report.runs) {
    auto row = metrics_json(run.metrics);
    row["fold"] = run.fold;
    row["tp"] = run.confusion.tp;
    row["fp"] = run.confusion.fp;
    row["fn"] = run.confusion.fn;
    row["tn"] = run.confusion.tn;
    row["n_train"] = run.n_train;
    row["test_docs"] = run.test_doc_ids;
    runs.push_back(std::move(row));
  }
  root["runs"] = std::move(runs);
  root["mean"] = metrics_json(report.mean);
  root["std"] = metrics_json(report.stddev);
  root["integrity"] = {{"folds_disjoint", report.integrity.folds_disjoint},
                       {"folds_cover_corpus", report.integrity.folds_cover_corpus},
                       {"no_leakage", report.integrity.no_leakage}};
  return root;
}

}  // namespace

std::string report_to_json(const EvalReport& report) { return report_json(report).dump(2) + "\n"; }

std::string report_to_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "fold\ttp\tfp\tfn\ttn\taccuracy\tprecision\trecall\tf_score\n";
  for (const auto& run : report.runs) {
    out << run.fold << '\t' << run.confusion.tp << '\t' << run.confusion.fp << '\t' << run.confusion.fn << '\t'
        << run.confusion.tn << '\t' << format_double(run.metrics.accuracy) << '\t'
        << format_double(run.metrics.precision) << '\t' << format_double(run.metrics.recall) << '\t'
        << format_double(run.metrics.f_score) << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const SweepResult& sweep) {
  nlohmann::json root;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : sweep.reports) reports.push_back(report_json(r));
  root["reports"] = std::move(reports);
  root["adjacent_rule_overlap"] = sweep.adjacent_overlap;
  root["f_range"] = sweep.f_range;
  nlohmann::json models = nlohmann::json::array();
  for (const auto& m : sweep.models) models.push_back(nlohmann::json::parse(model_to_json(m)));
  root["models"] = std::move(models);
  return root.dump(2) + "\n";
}

}  // namespace salience
