#include "salience/commands.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "salience/error.hpp"
#include "salience/format.hpp"
#include "salience/summarizer.hpp"

namespace salience {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  top_count(compression, 1);
  if (mode == Mode::User && !interest_file) {
    throw ConfigError("user-focused mode needs --interest (a file listing the interest documents)");
  }
  if (!(neg_ratio > 0.0)) throw ConfigError("neg-ratio must be positive");
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (!(activation.decay > 0.0 && activation.decay < 1.0)) throw ConfigError("decay must be in (0,1)");
  if (cooc.window < 1) throw ConfigError("cooc-window must be at least 1");
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
}

void require(const fs::path& path, const std::string& step) {
  if (!fs::exists(path)) {
    throw ConfigError("missing " + path.string() + ": run `salience " + step + "` first");
  }
}

// Ingested documents plus everything later stages rebuild them with.
struct Ingested {
  Stoplist stoplist;
  SynonymLexicon lex;
  std::vector<Document> docs;
};

Ingested load_ingested(const Artifacts& a) {
  require(a.docs(), "ingest");
  Ingested in;
  in.stoplist = Stoplist::load(a.stoplist());
  in.lex = SynonymLexicon::load(a.synonyms());
  in.docs = load_corpus(a.docs(), in.stoplist);
  return in;
}

CorpusResources load_resources(const RunConfig& config, const Artifacts& a) {
  auto in = load_ingested(a);
  require(a.stats(), "stats");
  require(a.cooccurrence(), "stats");
  CorpusResources r;
  r.docs = std::move(in.docs);
  r.lex = std::move(in.lex);
  r.stats = load_corpus_stats(a.stats());
  r.table = CooccurrenceTable::load(a.cooccurrence(), config.cooc);
  for (const auto& doc : r.docs) {
    if (!r.stats.has_document(doc.id)) {
      throw ConfigError("statistics do not cover document \"" + doc.id + "\": rerun `salience stats`");
    }
  }
  return r;
}

// User mode: the topic from the topic step, and keyword maps from its files.
void load_user_focus(CorpusResources& r, const Artifacts& a) {
  require(a.topic(), "topic");
  r.topic = load_topic(a.topic());
  for (const auto& doc : r.docs) {
    const fs::path path = a.keywords() / (doc.id + ".tsv");
    require(path, "topic");
    r.keywords.emplace(doc.id, load_keywords(path, doc.id));
  }
}

std::vector<PreparedDoc> prepared_from_resources(const RunConfig& config, const CorpusResources& r,
                                                 double compression) {
  PrepareOptions options;
  options.mode = config.mode;
  options.features.compression = compression;
  return prepare_documents(r, options);
}

}  // namespace

std::size_t cmd_ingest(const RunConfig& config) {
  config.validate();
  if (config.corpus_dir.empty()) throw ConfigError("ingest needs --corpus (a directory of document files)");
  if (!fs::is_directory(config.corpus_dir)) {
    throw ConfigError("corpus directory " + config.corpus_dir.string() + " does not exist");
  }
  const Artifacts a{config.output_dir};
  const std::string stoplist_text =
      config.stoplist_path.empty() ? std::string() : read_file(config.stoplist_path);
  const Stoplist stoplist = config.stoplist_path.empty() ? Stoplist::english() : Stoplist::parse(stoplist_text);
  const std::string synonyms_text = config.synonyms_path.empty() ? std::string() : read_file(config.synonyms_path);
  SynonymLexicon::parse(synonyms_text);

  const auto docs = load_corpus(config.corpus_dir, stoplist);
  if (docs.empty()) throw DataError("corpus directory " + config.corpus_dir.string() + " holds no *.json documents");

  std::error_code ec;
  fs::remove_all(a.docs(), ec);
  ensure_dir(a.docs());
  for (const auto& doc : docs) write_file(a.docs() / (doc.id + ".json"), serialize_document(doc));
  if (config.stoplist_path.empty()) {
    std::vector<std::string> words(stoplist.words().begin(), stoplist.words().end());
    std::sort(words.begin(), words.end());
    std::string text;
    for (const auto& w : words) text += w + "\n";
    write_file(a.stoplist(), text);
  } else {
    write_file(a.stoplist(), stoplist_text);
  }
  write_file(a.synonyms(), synonyms_text);
  return docs.size();
}

void cmd_stats(const RunConfig& config) {
  config.validate();
  const Artifacts a{config.output_dir};
  const auto in = load_ingested(a);
  save_corpus_stats(build_corpus_stats(in.docs), a.stats());
  build_cooccurrence_table(in.docs, config.cooc).save(a.cooccurrence());
}

Topic cmd_topic(const RunConfig& config) {
  config.validate();
  if (!config.interest_file) throw ConfigError("topic needs --interest (a file listing the interest documents)");
  const Artifacts a{config.output_dir};
  auto r = load_resources(config, a);
  const auto ids = load_interest_ids(*config.interest_file);
  attach_user_interest(r, ids, config.topic, config.activation);
  save_topic(*r.topic, a.topic());
  std::error_code ec;
  fs::remove_all(a.keywords(), ec);
  ensure_dir(a.keywords());
  for (const auto& [id, keywords] : r.keywords) save_keywords(keywords, a.keywords() / (id + ".tsv"));
  return *r.topic;
}

LabeledSet cmd_label(const RunConfig& config) {
  config.validate();
  const Artifacts a{config.output_dir};
  auto r = load_resources(config, a);
  if (config.mode == Mode::User) load_user_focus(r, a);
  const auto prepared = prepared_from_resources(config, r, config.compression);
  const auto all = flatten(prepared);
  write_feature_tsv(all, a.vectors());
  auto set = training_set(prepared, config.neg_ratio, derive_seed(config.seed, 0));
  save_labeled_set(set, a.train());
  return set;
}

Model cmd_train(const RunConfig& config, const std::optional<fs::path>& model_path) {
  config.validate();
  const Artifacts a{config.output_dir};
  require(a.train(), "label");
  const auto set = load_labeled_set(a.train());
  if (set.vectors.empty()) throw DataError(a.train().string() + " holds no vectors");
  const bool has_keywords = set.vectors.front().has_keyword_features();
  if (config.mode == Mode::User && !has_keywords) {
    throw ConfigError("the labeled vectors were produced in generic mode: rerun `salience label --mode user`");
  }
  if (config.mode == Mode::Generic && has_keywords) {
    throw ConfigError("the labeled vectors were produced in user mode: pass --mode user");
  }
  const Model model = train_model(config.learner, set, config.learner_params);
  save_model(model, model_path.value_or(a.model()));
  std::visit([&](const auto& m) { write_file(a.rules(), pretty_print(m)); }, model);
  return model;
}

EvalReport cmd_evaluate(const RunConfig& config, bool learning_curve_too) {
  config.validate();
  const Artifacts a{config.output_dir};
  auto r = load_resources(config, a);
  if (config.mode == Mode::User) load_user_focus(r, a);
  const auto prepared = prepared_from_resources(config, r, config.compression);

  EvalConfig eval;
  eval.learner = config.learner;
  eval.mode = config.mode;
  eval.compression = config.compression;
  eval.seed = config.seed;
  eval.folds = config.folds;
  eval.neg_ratio = config.neg_ratio;
  eval.balance_test = config.balance_test;
  eval.learner_params = config.learner_params;
  const auto report = cross_validate(prepared, eval);
  write_file(a.report(), report_to_json(report));
  write_file(a.report_tsv(), report_to_tsv(report));

  if (learning_curve_too) {
    const std::vector<double> fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const auto curve = learning_curve(prepared, eval, fractions);
    std::string tsv = "fraction\taccuracy\tprecision\trecall\tf_score\n";
    for (const auto& p : curve) {
      tsv += format_double(p.fraction) + "\t" + format_double(p.mean.accuracy) + "\t" +
             format_double(p.mean.precision) + "\t" + format_double(p.mean.recall) + "\t" +
             format_double(p.mean.f_score) + "\n";
    }
    write_file(a.curve(), tsv);
  }
  return report;
}

SweepResult cmd_sweep(const RunConfig& config, const std::vector<double>& compressions) {
  config.validate();
  if (compressions.empty()) throw ConfigError("sweep needs at least one compression rate");
  for (const double c : compressions) top_count(c, 1);
  const Artifacts a{config.output_dir};
  auto r = load_resources(config, a);
  if (config.mode == Mode::User) load_user_focus(r, a);

  EvalConfig eval;
  eval.learner = config.learner;
  eval.mode = config.mode;
  eval.seed = config.seed;
  eval.folds = config.folds;
  eval.neg_ratio = config.neg_ratio;
  eval.balance_test = config.balance_test;
  eval.learner_params = config.learner_params;
  auto sweep = compression_sweep(r, eval, compressions);
  write_file(a.sweep(), sweep_to_json(sweep));
  return sweep;
}

std::vector<fs::path> cmd_summarize(const RunConfig& config, const std::vector<fs::path>& inputs,
                                    SummaryFormat format, const std::optional<fs::path>& model_path) {
  config.validate();
  const Artifacts a{config.output_dir};
  const fs::path model_file = model_path.value_or(a.model());
  if (!fs::exists(model_file)) throw ConfigError("missing " + model_file.string() + ": run `salience train` first");
  const Model model = load_model(model_file);
  auto r = load_resources(config, a);

  std::vector<Document> targets;
  if (inputs.empty()) {
    targets = r.docs;
  } else {
    Stoplist stoplist = Stoplist::load(a.stoplist());
    bool extended = false;
    for (const auto& path : inputs) {
      targets.push_back(load_document(path, stoplist));
      if (!r.stats.has_document(targets.back().id)) {
        r.docs.push_back(targets.back());
        extended = true;
      }
    }
    // New documents join the background statistics they are scored against.
    if (extended) r.stats = build_corpus_stats(r.docs);
  }
  if (requires_keywords(model) && fs::exists(a.topic())) r.topic = load_topic(a.topic());

  ensure_dir(a.summaries());
  std::vector<fs::path> written;
  const std::string model_id = model_file.stem().string();
  for (const auto& doc : targets) {
    std::optional<KeywordMap> keywords;
    if (r.topic) keywords = spread_activation(*r.topic, doc, r.table, r.lex, config.activation);
    const auto summary = summarize(doc, model, r.stats, r.table, r.lex, config.compression,
                                   keywords ? &*keywords : nullptr, model_id);
    const bool json = format == SummaryFormat::Json;
    const fs::path path = a.summaries() / (doc.id + (json ? ".json" : ".txt"));
    write_file(path, json ? summary_to_json(summary) : summary_to_text(summary));
    written.push_back(path);
  }
  return written;
}

SynthCheck cmd_synth(const SynthParams& params, const fs::path& dir) {
  const auto corpus = generate_corpus(params);
  write_corpus(corpus, dir);
  return self_check(corpus);
}

}  // namespace salience
