#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace axiom_align {

/// Lowercase lemma tokens of an entity name or label. Tokens are non-empty and
/// consist of ASCII letters and digits only.
struct TermTokens {
  std::vector<std::string> tokens;

  bool empty() const noexcept { return tokens.empty(); }
  /// Tokens joined with `sep` ("-" for edit distance, "" for synonym lookup).
  std::string joined(std::string_view sep = "-") const;
  auto operator<=>(const TermTokens&) const = default;
};

/// Splits on camelCase humps, letter/digit changes and every non-alphanumeric
/// byte, then lowercases. "PhD_candidate" gives {"phd", "candidate"}:
/// a single trailing capital does not open a new word.
std::vector<std::string> split_term(std::string_view raw);

/// Irregular form -> lemma. Entries override the suffix rules.
using ExceptionTable = std::unordered_map<std::string, std::string>;

const ExceptionTable& default_exceptions();

/// Rule-based English lemmatizer for lowercase words. Applies the exception
/// table, then the suffix rules (ies, sses, ches/shes/xes, s, ing/ed with
/// consonant undoubling and silent-e restoration), repeating until the word
/// stops changing, so the result is always a fixed point.
std::string lemmatize(std::string_view word, const ExceptionTable& exceptions = default_exceptions());

TermTokens normalize_term(std::string_view raw);

/// Plain-text synonym lexicon: one synset per line, comma-separated lemmas,
/// `#` comments. Entries are normalized through normalize_term on load so
/// inflected forms in the file still hit.
class Lexicon {
 public:
  Lexicon() = default;

  /// Throws FormatError on a malformed line.
  static Lexicon parse(std::string_view text);
  /// Throws IoError if the file cannot be read.
  static Lexicon load(const std::filesystem::path& path);
  /// Conference-domain synsets compiled into the library.
  static const Lexicon& builtin();

  const std::vector<std::vector<std::string>>& synsets() const noexcept { return synsets_; }
  bool share_synset(const std::string& a, const std::string& b) const;
  std::size_t size() const noexcept { return synsets_.size(); }

 private:
  std::vector<std::vector<std::string>> synsets_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// True iff the terms differ and either their concatenated forms are equal
/// or share a synset, or they have equal length and every aligned token pair
/// is equal or shares a synset.
bool synonyms(const Lexicon& lexicon, const TermTokens& a, const TermTokens& b);

}  // namespace axiom_align
