#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace salience {

struct Token {
  std::string surface;
  std::string normalized;  // lowercased, never empty, no whitespace
  bool is_content = false;
  bool is_name_mention = false;

  bool operator==(const Token&) const = default;
};

// Function-word list. Membership is tested on normalized (lowercased) forms.
class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  bool contains(std::string_view word) const {
    return words_.find(std::string(word)) != words_.end();
  }
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

  // One lowercase word per line; '#' starts a comment; blank lines ignored.
  static Stoplist parse(std::string_view content);
  static Stoplist load(const std::filesystem::path& path);
  // Built-in English function-word list.
  static const Stoplist& english();

 private:
  std::unordered_set<std::string> words_;
};

// Splits on non-alphanumeric boundaries (Unicode letters and digits count as
// alphanumeric; hyphens split). A token is a name mention when its surface
// starts with an uppercase letter, it is not the first token, and it is not a
// stopword.
std::vector<Token> tokenize(std::string_view raw_text, const Stoplist& stoplist);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
std::string to_lower_utf8(std::string_view text);

}  // namespace salience
