#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "salience/commands.hpp"
#include "salience/error.hpp"

using namespace salience;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("salience_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

RunConfig synth_config(const fs::path& root, SynthProfile profile) {
  SynthParams params;
  params.profile = profile;
  params.n_docs = 12;
  params.seed = 2;
  cmd_synth(params, root / "synth");
  RunConfig config;
  config.corpus_dir = root / "synth" / "corpus";
  config.stoplist_path = root / "synth" / "stoplist.txt";
  config.synonyms_path = root / "synth" / "synonyms.txt";
  config.output_dir = root / "out";
  config.folds = 3;
  return config;
}

}  // namespace

TEST_CASE("generic pipeline from ingest to summaries") {
  TempDir tmp("generic");
  auto config = synth_config(tmp.path, SynthProfile::LeadBias);
  const Artifacts a{config.output_dir};

  CHECK_THROWS_AS(cmd_stats(config), ConfigError);  // nothing ingested yet
  CHECK(cmd_ingest(config) == 12);
  CHECK_THROWS_WITH_AS(cmd_label(config), doctest::Contains("salience stats"), ConfigError);
  cmd_stats(config);
  CHECK_THROWS_WITH_AS(cmd_train(config), doctest::Contains("salience label"), ConfigError);
  const auto set = cmd_label(config);
  CHECK(set.n_positive > 0);
  cmd_train(config);
  CHECK(fs::exists(a.model()));
  CHECK(fs::exists(a.rules()));

  const auto written = cmd_summarize(config, {}, SummaryFormat::Text);
  REQUIRE(written.size() == 12);
  for (const auto& path : written) {
    const auto doc_path = a.docs() / path.filename().replace_extension(".json");
    REQUIRE(fs::exists(doc_path));
  }
  // Every summary holds ceil(0.2 N) lines.
  const auto docs = load_corpus(a.docs(), Stoplist::load(a.stoplist()));
  for (const auto& doc : docs) {
    const auto lines = line_count(a.summaries() / (doc.id + ".txt"));
    CHECK(lines == top_count(0.2, doc.sentences.size()));
  }

  const auto report = cmd_evaluate(config);
  CHECK(report.runs.size() == 3);
  CHECK(fs::exists(a.report()));

  config.mode = Mode::User;
  config.interest_file = tmp.path / "missing.txt";
  CHECK_THROWS_AS(cmd_train(config), ConfigError);  // generic vectors
}

TEST_CASE("user mode needs an interest file") {
  RunConfig config;
  config.mode = Mode::User;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.mode = Mode::Generic;
  config.activation.decay = 1.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.activation.decay = 0.9;
  config.compression = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("user pipeline builds a topic and keyword features") {
  TempDir tmp("user");
  auto config = synth_config(tmp.path, SynthProfile::KeywordPlanted);
  config.mode = Mode::User;
  config.interest_file = tmp.path / "synth" / "interest.txt";
  cmd_ingest(config);
  cmd_stats(config);
  CHECK_THROWS_WITH_AS(cmd_label(config), doctest::Contains("salience topic"), ConfigError);
  const auto topic = cmd_topic(config);
  CHECK_FALSE(topic.words.empty());
  const auto set = cmd_label(config);
  REQUIRE_FALSE(set.vectors.empty());
  CHECK(set.vectors.front().has_keyword_features());
  cmd_train(config);
  const auto written = cmd_summarize(config, {}, SummaryFormat::Json);
  CHECK(written.size() == 12);
}
