#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace salience {

enum class SynthProfile { LeadBias, KeywordPlanted, Mixed };

std::string_view to_string(SynthProfile profile);
std::optional<SynthProfile> parse_synth_profile(std::string_view text);

struct SynthParams {
  SynthProfile profile = SynthProfile::LeadBias;
  std::size_t n_docs = 50;
  std::uint64_t seed = 0;
  std::size_t n_interest = 10;  // keyword-planted only; capped at n_docs / 5
};

// Per-sentence ground truth.
struct SynthSentence {
  bool planted = false;  // abstract source at 20% compression
  int level = 0;         // mixed profile: 1 (most salient) .. 4, 0 otherwise
  bool keyword = false;  // keyword-planted profile: carries topic words
};

struct SynthDocument {
  std::string id;
  std::string json;  // document file content
  std::vector<SynthSentence> truth;
};

struct SynthCorpus {
  SynthParams params;
  std::vector<SynthDocument> docs;
  std::string stoplist;
  std::string synonyms;
  std::vector<std::string> interest_ids;
  std::vector<std::string> topic_words;
};

// Deterministic in (profile, n_docs, seed). Throws ConfigError for n_docs < 10.
SynthCorpus generate_corpus(const SynthParams& params);

// Layout: <dir>/corpus/<id>.json, stoplist.txt, synonyms.txt, truth.tsv and,
// for keyword-planted corpora, interest.txt.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

struct SynthCheck {
  // Documents whose planted sentences are exactly the labeling top-c set
  // (for the mixed profile: at every one of 5/10/20/30%).
  double planted_fraction = 0.0;
  // Keyword-planted only: documents where every keyword sentence has a
  // strictly larger keyword_count than every other sentence.
  std::optional<double> keyword_fraction;
};

SynthCheck self_check(const SynthCorpus& corpus);

}  // namespace salience
