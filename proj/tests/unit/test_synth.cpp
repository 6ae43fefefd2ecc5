#include "doctest.h"
#include "salience/error.hpp"
#include "salience/synth.hpp"

using namespace salience;

TEST_CASE("generation is deterministic in the seed") {
  for (const auto profile : {SynthProfile::LeadBias, SynthProfile::KeywordPlanted, SynthProfile::Mixed}) {
    SynthParams params;
    params.profile = profile;
    params.n_docs = 12;
    params.seed = 4;
    const auto a = generate_corpus(params);
    const auto b = generate_corpus(params);
    REQUIRE(a.docs.size() == 12);
    for (std::size_t i = 0; i < a.docs.size(); ++i) CHECK(a.docs[i].json == b.docs[i].json);
    params.seed = 5;
    CHECK(generate_corpus(params).docs[0].json != a.docs[0].json);
  }
}

TEST_CASE("planted signal survives the labeling pipeline") {
  for (const auto profile : {SynthProfile::LeadBias, SynthProfile::KeywordPlanted, SynthProfile::Mixed}) {
    SynthParams params;
    params.profile = profile;
    params.n_docs = 20;
    params.seed = 1;
    const auto corpus = generate_corpus(params);
    const auto check = self_check(corpus);
    CHECK(check.planted_fraction >= 0.95);
    CHECK(check.keyword_fraction.has_value() == (profile == SynthProfile::KeywordPlanted));
    CHECK(check.keyword_fraction.value_or(1.0) >= 0.95);
  }
}

TEST_CASE("synth parameters are validated") {
  SynthParams params;
  params.n_docs = 5;
  CHECK_THROWS_AS(generate_corpus(params), ConfigError);
  CHECK(parse_synth_profile("keyword-planted") == SynthProfile::KeywordPlanted);
  CHECK_FALSE(parse_synth_profile("other").has_value());
}
