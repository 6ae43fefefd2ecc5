#include "salience/synth.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "salience/error.hpp"
#include "salience/features.hpp"
#include "salience/labeling.hpp"
#include "salience/pipeline.hpp"
#include "salience/rng.hpp"

namespace salience {

std::string_view to_string(SynthProfile profile) {
  switch (profile) {
    case SynthProfile::LeadBias: return "lead-bias";
    case SynthProfile::KeywordPlanted: return "keyword-planted";
    case SynthProfile::Mixed: return "mixed";
  }
  return "lead-bias";
}

std::optional<SynthProfile> parse_synth_profile(std::string_view text) {
  if (text == "lead-bias") return SynthProfile::LeadBias;
  if (text == "keyword-planted") return SynthProfile::KeywordPlanted;
  if (text == "mixed") return SynthProfile::Mixed;
  return std::nullopt;
}

namespace {

using Words = std::vector<std::string>;

const Words kFunctionWords = {"the", "of", "and", "a", "in", "to", "with", "for", "on", "by", "is", "this"};
const Words kBodyHeadings = {"Background", "Method", "Experiments", "Results", "Analysis", "Discussion"};
const Words kSubHeadings = {"Setup", "Details", "Variants"};
const double kCompressions[] = {0.05, 0.10, 0.20, 0.30};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }

  // Distinct pronounceable pseudo-words that collide with no function word,
  // heading word or previously issued word.
  Words fresh_words(std::size_t count) {
    static const std::string consonants = "bdfgklmnprstvz";
    static const std::string vowels = "aeiou";
    Words out;
    while (out.size() < count) {
      std::string w;
      const std::size_t syllables = 2 + rng_.index(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w += consonants[rng_.index(consonants.size())];
        w += vowels[rng_.index(vowels.size())];
      }
      if (rng_.chance(0.4)) w += consonants[rng_.index(consonants.size())];
      if (!issued_.insert(w).second) continue;
      if (is_reserved(w)) continue;
      out.push_back(w);
    }
    return out;
  }

  const std::string& pick(const Words& words) { return words[rng_.index(words.size())]; }

  Words sample(const Words& words, std::size_t count) {
    Words out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pick(words));
    return out;
  }

  // Splits `total` into chunks of lo..hi (the last may be smaller than lo).
  std::vector<std::size_t> chunks(std::size_t total, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    while (total > 0) {
      const std::size_t size = std::min(total, lo + rng_.index(hi - lo + 1));
      out.push_back(size);
      total -= size;
    }
    return out;
  }

  // Content words in the given order, joined with function words and an
  // optional capitalized name in mid-sentence.
  std::string render(const Words& content, const Words* names = nullptr) {
    std::string text = "The";
    for (std::size_t i = 0; i < content.size(); ++i) {
      if (i > 0 && rng_.chance(0.35)) text += " " + pick(kFunctionWords);
      if (names != nullptr && i == content.size() / 2) {
        std::string name = pick(*names);
        name[0] = static_cast<char>(name[0] - 'a' + 'A');
        text += " " + name;
      }
      text += " " + content[i];
    }
    return text + ".";
  }

 private:
  static bool is_reserved(const std::string& w) {
    if (std::find(kFunctionWords.begin(), kFunctionWords.end(), w) != kFunctionWords.end()) return true;
    for (const auto* list : {&kBodyHeadings, &kSubHeadings}) {
      for (const auto& h : *list) {
        if (to_lower_utf8(h) == w) return true;
      }
    }
    return w == "introduction" || w == "conclusion" || w == "summary";
  }

  Rng rng_;
  std::set<std::string> issued_;
};

struct SectionPlan {
  std::string heading;
  int depth = 1;
  std::string kind;
  std::vector<std::size_t> paragraphs;  // sentence counts
};

// Introduction (intro sentences), 2-4 body sections, then an optional conclusion.
std::vector<SectionPlan> make_layout(Generator& g, std::size_t n, std::size_t intro, std::size_t conclusion) {
  std::vector<SectionPlan> layout;
  layout.push_back({"Introduction", 1, "introduction", g.chunks(intro, 2, 4)});
  const std::size_t body = n - intro - conclusion;
  const std::size_t n_body = std::min<std::size_t>(2 + g.rng().index(3), std::max<std::size_t>(1, body / 3));
  Words headings = kBodyHeadings;
  g.rng().shuffle(std::span<std::string>(headings));
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < n_body; ++s) {
    const std::size_t size = s + 1 == n_body ? body - assigned : body / n_body;
    assigned += size;
    const bool sub = s > 0 && g.rng().chance(0.3);
    layout.push_back({sub ? g.pick(kSubHeadings) : headings[s], sub ? 2 : 1, "other", g.chunks(size, 1, 5)});
  }
  if (conclusion > 0) layout.push_back({"Conclusion", 1, "conclusion", g.chunks(conclusion, 1, 3)});
  return layout;
}

std::string document_json(const std::string& id, const std::string& title, const Words& abstract,
                          const std::vector<SectionPlan>& layout, const Words& sentences) {
  nlohmann::ordered_json doc;
  doc["id"] = id;
  doc["title"] = title;
  doc["abstract"] = abstract;
  nlohmann::ordered_json sections = nlohmann::ordered_json::array();
  std::size_t next = 0;
  for (const auto& plan : layout) {
    nlohmann::ordered_json paragraphs = nlohmann::ordered_json::array();
    for (const auto size : plan.paragraphs) {
      Words para(sentences.begin() + static_cast<std::ptrdiff_t>(next),
                 sentences.begin() + static_cast<std::ptrdiff_t>(next + size));
      next += size;
      paragraphs.push_back(para);
    }
    sections.push_back({{"heading", plan.heading}, {"depth", plan.depth}, {"kind", plan.kind},
                        {"paragraphs", std::move(paragraphs)}});
  }
  doc["sections"] = std::move(sections);
  return doc.dump(1) + "\n";
}

std::string title_case(const Words& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += static_cast<char>(w[0] - 'a' + 'A');
    out += w.substr(1);
  }
  return out;
}

std::string doc_id(std::size_t i) {
  std::ostringstream out;
  out << "doc" << (i < 10 ? "00" : i < 100 ? "0" : "") << i;
  return out.str();
}

// Random k-subset of [0, n), as a membership mask.
std::vector<bool> random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<bool> mask(n, false);
  for (std::size_t i = 0; i < k; ++i) mask[order[i]] = true;
  return mask;
}

std::string synset_lines(const std::vector<Words>& synsets) {
  std::string out = "# one synset per line\n";
  for (const auto& set : synsets) {
    for (std::size_t i = 0; i < set.size(); ++i) out += (i > 0 ? " " : "") + set[i];
    out += '\n';
  }
  return out;
}

// Filler synsets over the shared vocabulary, so the synonym-cohesion feature
// carries some (uninformative) signal.
std::vector<Words> filler_synsets(Generator& g, const Words& vocab, std::size_t count) {
  Words shuffled = vocab;
  g.rng().shuffle(std::span<std::string>(shuffled));
  std::vector<Words> out;
  for (std::size_t i = 0; i + 1 < shuffled.size() && out.size() < count; i += 2) {
    out.push_back({shuffled[i], shuffled[i + 1]});
  }
  return out;
}

// Sentences of the leading introduction are copied into the abstract.
void lead_bias(Generator& g, SynthCorpus& corpus) {
  const Words vocab = g.fresh_words(600);
  const Words names = g.fresh_words(40);
  corpus.synonyms = synset_lines(filler_synsets(g, vocab, 60));
  for (std::size_t d = 0; d < corpus.params.n_docs; ++d) {
    const std::size_t n = 25 + g.rng().index(16);
    const std::size_t k = top_count(0.2, n);
    Words pool = vocab;
    g.rng().shuffle(std::span<std::string>(pool));
    const Words lead(pool.begin(), pool.begin() + 80);
    const Words rest(pool.begin() + 80, pool.end());

    Words sentences;
    SynthDocument doc;
    doc.id = doc_id(d);
    for (std::size_t i = 0; i < n; ++i) {
      const bool planted = i < k;
      const auto content = g.sample(planted ? lead : rest, 6 + g.rng().index(4));
      sentences.push_back(g.render(content, g.rng().chance(0.15) ? &names : nullptr));
      doc.truth.push_back({planted, 0, false});
    }
    const Words abstract(sentences.begin(), sentences.begin() + static_cast<std::ptrdiff_t>(k));
    const auto layout = make_layout(g, n, k, 0);
    doc.json = document_json(doc.id, title_case(g.sample(rest, 3)), abstract, layout, sentences);
    corpus.docs.push_back(std::move(doc));
  }
}

// Tiered salience: level-t sentences carry (5 - t) title-word tokens and share
// a level-dependent number of private words with the abstract, so the top-c
// set under both title mentions and abstract similarity is the same tier
// prefix at 5, 10, 20 and 30%.
void mixed(Generator& g, SynthCorpus& corpus) {
  const Words vocab = g.fresh_words(600);
  const Words names = g.fresh_words(40);
  corpus.synonyms = synset_lines(filler_synsets(g, vocab, 60));
  const std::size_t shared_per_level[] = {8, 6, 4, 2};
  for (std::size_t d = 0; d < corpus.params.n_docs; ++d) {
    const std::size_t n = 30 + g.rng().index(16);
    std::size_t cut[4];
    for (int t = 0; t < 4; ++t) cut[t] = top_count(kCompressions[t], n);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    g.rng().shuffle(std::span<std::size_t>(order));
    std::vector<int> level(n, 0);
    for (std::size_t r = 0; r < cut[3]; ++r) {
      int t = 0;
      while (r >= cut[t]) ++t;
      level[order[r]] = t + 1;
    }

    Words pool = vocab;
    g.rng().shuffle(std::span<std::string>(pool));
    std::size_t next = 0;
    auto take = [&](std::size_t count) {
      Words out(pool.begin() + static_cast<std::ptrdiff_t>(next),
                pool.begin() + static_cast<std::ptrdiff_t>(next + count));
      next += count;
      return out;
    };
    const Words title = take(4);
    const Words theme = take(3);

    SynthDocument doc;
    doc.id = doc_id(d);
    Words sentences(n);
    std::vector<std::pair<int, std::string>> abstract_parts;
    // Private words are taken before the filler pool is fixed.
    std::vector<Words> private_words(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (level[i] > 0) private_words[i] = take(shared_per_level[level[i] - 1]);
    }
    const Words filler(pool.begin() + static_cast<std::ptrdiff_t>(next), pool.end());
    for (std::size_t i = 0; i < n; ++i) {
      Words content;
      if (level[i] > 0) {
        content = private_words[i];
        const auto titles = g.sample(title, static_cast<std::size_t>(5 - level[i]));
        content.insert(content.end(), titles.begin(), titles.end());
        const auto extra = g.sample(filler, 2);
        content.insert(content.end(), extra.begin(), extra.end());
        g.rng().shuffle(std::span<std::string>(content));
        abstract_parts.emplace_back(level[i], g.render(private_words[i]));
      } else {
        content = g.sample(filler, 6 + g.rng().index(4));
        if (g.rng().chance(0.3)) {
          const auto extra = g.sample(theme, 2 + g.rng().index(2));
          content.insert(content.end(), extra.begin(), extra.end());
        }
      }
      sentences[i] = g.render(content, g.rng().chance(0.15) ? &names : nullptr);
      doc.truth.push_back({level[i] > 0 && level[i] <= 3, level[i], false});
    }
    std::stable_sort(abstract_parts.begin(), abstract_parts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Words abstract;
    for (auto& [lvl, text] : abstract_parts) abstract.push_back(std::move(text));
    const auto layout = make_layout(g, n, 3 + g.rng().index(4), 2 + g.rng().index(3));
    doc.json = document_json(doc.id, title_case(title), abstract, layout, sentences);
    corpus.docs.push_back(std::move(doc));
  }
}

// Exactly ceil(0.2 N) sentences per document carry topic vocabulary. Interest
// documents repeat the topic words densely; every other document names one
// topic word once and otherwise uses its synonyms, which spreading activation
// reaches through the lexicon. The abstract copies an unrelated random subset
// of sentences, so generic labels carry no keyword signal.
void keyword_planted(Generator& g, SynthCorpus& corpus) {
  const Words vocab = g.fresh_words(200);
  const Words names = g.fresh_words(40);
  const Words topic = g.fresh_words(3);
  std::vector<Words> topic_synsets;
  auto synsets = filler_synsets(g, vocab, 30);
  for (const auto& word : topic) {
    Words set = {word};
    const auto synonyms = g.fresh_words(3);
    set.insert(set.end(), synonyms.begin(), synonyms.end());
    topic_synsets.push_back(set);
    synsets.push_back(set);
  }
  corpus.synonyms = synset_lines(synsets);
  corpus.topic_words = topic;

  // Beyond a fifth of the corpus the topic words stop standing out.
  const std::size_t n_interest = std::clamp<std::size_t>(corpus.params.n_interest, 1, corpus.params.n_docs / 5);
  for (std::size_t d = 0; d < corpus.params.n_docs; ++d) {
    const bool interest = d < n_interest;
    const std::size_t n = 25 + g.rng().index(16);
    const std::size_t k = top_count(0.2, n);
    const auto keyword = random_subset(g.rng(), n, k);
    const auto source = random_subset(g.rng(), n, k);
    const Words& synset = topic_synsets[g.rng().index(topic_synsets.size())];
    const Words synonyms(synset.begin() + 1, synset.end());

    Words pool = vocab;
    g.rng().shuffle(std::span<std::string>(pool));
    const Words source_words(pool.begin(), pool.begin() + 60);
    const Words rest(pool.begin() + 60, pool.end());

    SynthDocument doc;
    doc.id = doc_id(d);
    if (interest) corpus.interest_ids.push_back(doc.id);
    Words sentences;
    Words abstract;
    bool named = false;
    for (std::size_t i = 0; i < n; ++i) {
      auto content = g.sample(source[i] ? source_words : rest, 6 + g.rng().index(4));
      if (keyword[i]) {
        if (interest) {
          const auto extra = g.sample(topic, 8);
          content.insert(content.end(), extra.begin(), extra.end());
        } else {
          if (!named) content.push_back(synset.front());
          named = true;
          content.push_back(g.pick(synonyms));
        }
        g.rng().shuffle(std::span<std::string>(content));
      }
      sentences.push_back(g.render(content, g.rng().chance(0.15) ? &names : nullptr));
      if (source[i]) abstract.push_back(sentences.back());
      doc.truth.push_back({source[i], 0, keyword[i]});
    }
    const auto layout = make_layout(g, n, 3 + g.rng().index(4), 2 + g.rng().index(3));
    doc.json = document_json(doc.id, title_case(g.sample(rest, 3)), abstract, layout, sentences);
    corpus.docs.push_back(std::move(doc));
  }
}

}  // namespace

SynthCorpus generate_corpus(const SynthParams& params) {
  if (params.n_docs < 10) throw ConfigError("synth needs at least 10 documents");
  SynthCorpus corpus;
  corpus.params = params;
  corpus.stoplist = "# function words used by the generator\n";
  for (const auto& w : kFunctionWords) corpus.stoplist += w + "\n";
  Generator g(params.seed ^ (static_cast<std::uint64_t>(params.profile) << 56));
  switch (params.profile) {
    case SynthProfile::LeadBias: lead_bias(g, corpus); break;
    case SynthProfile::Mixed: mixed(g, corpus); break;
    case SynthProfile::KeywordPlanted: keyword_planted(g, corpus); break;
  }
  return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir / "corpus", ec);
  if (ec) throw ConfigError("cannot create " + (dir / "corpus").string() + ": " + ec.message());
  auto write = [](const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
  };
  for (const auto& doc : corpus.docs) write(dir / "corpus" / (doc.id + ".json"), doc.json);
  write(dir / "stoplist.txt", corpus.stoplist);
  write(dir / "synonyms.txt", corpus.synonyms);
  if (!corpus.interest_ids.empty()) {
    std::string ids;
    for (const auto& id : corpus.interest_ids) ids += id + "\n";
    write(dir / "interest.txt", ids);
  }
  std::string truth = "doc_id\tsent_index\tplanted\tlevel\tkeyword\n";
  for (const auto& doc : corpus.docs) {
    for (std::size_t i = 0; i < doc.truth.size(); ++i) {
      const auto& t = doc.truth[i];
      truth += doc.id + "\t" + std::to_string(i) + "\t" + (t.planted ? "1" : "0") + "\t" +
               std::to_string(t.level) + "\t" + (t.keyword ? "1" : "0") + "\n";
    }
  }
  write(dir / "truth.tsv", truth);
}

SynthCheck self_check(const SynthCorpus& corpus) {
  const auto stoplist = Stoplist::parse(corpus.stoplist);
  std::vector<Document> docs;
  for (const auto& d : corpus.docs) docs.push_back(parse_document(d.json, stoplist, d.id));
  auto resources = build_resources(std::move(docs), SynonymLexicon::parse(corpus.synonyms));

  SynthCheck check;
  std::size_t planted_ok = 0;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& truth = corpus.docs[d].truth;
    const auto& doc = resources.docs[d];
    bool ok = true;
    if (corpus.params.profile == SynthProfile::Mixed) {
      for (int t = 0; t < 4 && ok; ++t) {
        const auto labels = label_document(doc, resources.stats, kCompressions[t]);
        for (std::size_t i = 0; i < truth.size(); ++i) {
          const bool expected = truth[i].level > 0 && truth[i].level <= t + 1;
          if (labels[i] != expected) ok = false;
        }
      }
    } else {
      const auto labels = label_document(doc, resources.stats, 0.2);
      for (std::size_t i = 0; i < truth.size(); ++i) {
        if (labels[i] != truth[i].planted) ok = false;
      }
    }
    if (ok) ++planted_ok;
  }
  check.planted_fraction = static_cast<double>(planted_ok) / static_cast<double>(corpus.docs.size());

  if (corpus.params.profile == SynthProfile::KeywordPlanted) {
    attach_user_interest(resources, corpus.interest_ids);
    std::size_t dominant = 0;
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
      const auto& doc = resources.docs[d];
      const auto vectors = extract_features(doc, resources.stats, resources.table, resources.lex, {},
                                            &resources.keywords.at(doc.id));
      int min_keyword = INT32_MAX;
      int max_other = -1;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        const int count = *vectors[i].keyword_count;
        if (corpus.docs[d].truth[i].keyword) {
          min_keyword = std::min(min_keyword, count);
        } else {
          max_other = std::max(max_other, count);
        }
      }
      if (min_keyword > max_other) ++dominant;
    }
    check.keyword_fraction = static_cast<double>(dominant) / static_cast<double>(corpus.docs.size());
  }
  return check;
}

}  // namespace salience
