#include "axiom_align/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "axiom_align/error.hpp"

namespace axiom_align {

std::string TermTokens::joined(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

namespace {

bool is_upper(char ch) { return ch >= 'A' && ch <= 'Z'; }
bool is_lower(char ch) { return ch >= 'a' && ch <= 'z'; }
bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }
bool is_alpha(char ch) { return is_upper(ch) || is_lower(ch); }

}  // namespace

std::vector<std::string> split_term(std::string_view raw) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    char ch = raw[i];
    if (!is_alpha(ch) && !is_digit(ch)) {
      flush();
      continue;
    }
    if (i > 0 && !current.empty()) {
      char prev = raw[i - 1];
      bool next_lower = i + 1 < n && is_lower(raw[i + 1]);
      bool boundary = false;
      if (is_digit(prev) != is_digit(ch)) {
        boundary = true;
      } else if (is_upper(ch) && is_lower(prev)) {
        // A hump opens a word when a lowercase run follows, or when at least
        // two capitals form an acronym ("hasURL"). A lone trailing capital
        // stays attached ("PhD").
        std::size_t run = i;
        while (run < n && is_upper(raw[run])) ++run;
        std::size_t caps = run - i;
        bool run_feeds_word = run < n && is_lower(raw[run]);
        if (next_lower || caps - (run_feeds_word ? 1 : 0) >= 2) boundary = true;
      } else if (is_upper(ch) && is_upper(prev) && next_lower) {
        boundary = true;  // end of an acronym: "XMLParser" -> XML | Parser
      }
      if (boundary) flush();
    }
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  flush();
  return words;
}

const ExceptionTable& default_exceptions() {
  static const ExceptionTable table = {
      // irregular verbs
      {"wrote", "write"}, {"written", "write"}, {"made", "make"}, {"took", "take"},
      {"taken", "take"}, {"gave", "give"}, {"given", "give"}, {"went", "go"}, {"gone", "go"},
      {"goes", "go"}, {"does", "do"}, {"done", "do"}, {"chose", "choose"},
      {"chosen", "choose"}, {"held", "hold"}, {"sent", "send"}, {"spent", "spend"},
      {"paid", "pay"}, {"said", "say"}, {"known", "know"}, {"knew", "know"},
      {"shown", "show"}, {"seen", "see"}, {"began", "begin"}, {"begun", "begin"},
      {"found", "find"}, {"bought", "buy"}, {"brought", "bring"}, {"thought", "think"},
      {"taught", "teach"}, {"caught", "catch"}, {"sought", "seek"}, {"built", "build"},
      {"meant", "mean"}, {"kept", "keep"}, {"lost", "lose"}, {"understood", "understand"},
      {"stood", "stand"}, {"spoke", "speak"}, {"spoken", "speak"}, {"drew", "draw"},
      {"drawn", "draw"}, {"grew", "grow"}, {"grown", "grow"}, {"threw", "throw"},
      {"thrown", "throw"}, {"driven", "drive"}, {"drove", "drive"}, {"hidden", "hide"},
      {"forgotten", "forget"}, {"chaired", "chair"}, {"agreed", "agree"}, {"freed", "free"},
      // regular forms the suffix rules get wrong
      {"used", "use"}, {"using", "use"}, {"caused", "cause"}, {"causing", "cause"},
      {"created", "create"}, {"creating", "create"}, {"treated", "treat"},
      {"treating", "treat"}, {"repeated", "repeat"}, {"repeating", "repeat"},
      {"stored", "store"}, {"storing", "store"}, {"scored", "score"}, {"scoring", "score"},
      {"ties", "tie"}, {"tied", "tie"}, {"lies", "lie"}, {"lied", "lie"}, {"dies", "die"},
      {"died", "die"}, {"movies", "movie"}, {"cookies", "cookie"},
      // irregular plurals
      {"children", "child"}, {"people", "person"}, {"women", "woman"}, {"feet", "foot"},
      {"teeth", "tooth"}, {"mice", "mouse"}, {"criteria", "criterion"},
      {"phenomena", "phenomenon"}, {"indices", "index"}, {"matrices", "matrix"},
      {"analyses", "analysis"}, {"theses", "thesis"}, {"hypotheses", "hypothesis"},
      // nouns that look inflected
      {"news", "news"}, {"series", "series"}, {"species", "species"}, {"physics", "physics"},
      {"mathematics", "mathematics"}, {"economics", "economics"}, {"politics", "politics"},
      {"ethics", "ethics"}, {"alias", "alias"}, {"atlas", "atlas"}, {"bias", "bias"},
      {"during", "during"}, {"morning", "morning"}, {"evening", "evening"},
      {"nothing", "nothing"}, {"something", "something"}, {"anything", "anything"},
      {"everything", "everything"}, {"embed", "embed"}, {"hundred", "hundred"},
      {"meeting", "meeting"}, {"meetings", "meeting"}, {"proceeding", "proceeding"},
      {"proceedings", "proceeding"}, {"setting", "setting"}, {"settings", "setting"},
      {"building", "building"}, {"buildings", "building"}, {"training", "training"},
  };
  return table;
}

namespace {

bool is_vowel(char ch) {
  return ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u';
}

bool is_consonant_at(std::string_view w, std::size_t i) {
  char ch = w[i];
  if (!is_lower(ch) || is_vowel(ch)) return false;
  return ch != 'y' || i == 0;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel(w[i]) || (w[i] == 'y' && i > 0)) return true;
  }
  return false;
}

// Stem endings after which an -ing/-ed form dropped a silent 'e'
// ("creat" is handled by the exception table).
struct Restoration {
  std::string_view ending;
  bool needs_consonant_before;
};

constexpr std::array kRestorations{
    Restoration{"iz", false}, Restoration{"yz", false}, Restoration{"ang", false},
    Restoration{"ag", false}, Restoration{"dg", false}, Restoration{"rg", false},
    Restoration{"ac", false}, Restoration{"ic", false}, Restoration{"uc", false},
    Restoration{"nc", false}, Restoration{"rc", false}, Restoration{"iv", false},
    Restoration{"ov", false}, Restoration{"lv", false}, Restoration{"rv", false},
    Restoration{"bl", false}, Restoration{"cl", false}, Restoration{"dl", false},
    Restoration{"fl", false}, Restoration{"gl", false}, Restoration{"kl", false},
    Restoration{"pl", false}, Restoration{"tl", false}, Restoration{"zl", false},
    Restoration{"at", true},  Restoration{"ut", true},  Restoration{"id", true},
    Restoration{"ir", true},  Restoration{"os", true},  Restoration{"ar", true},
    Restoration{"in", true},  Restoration{"ud", true},  Restoration{"ur", true},
};

std::string restore(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 4 && stem[n - 1] == stem[n - 2] && is_consonant_at(stem, n - 1) &&
      std::string_view("lszf").find(stem[n - 1]) == std::string_view::npos) {
    stem.pop_back();  // submitted -> submit
    return stem;
  }
  for (const auto& r : kRestorations) {
    if (!ends_with(stem, r.ending)) continue;
    if (r.needs_consonant_before) {
      if (n <= r.ending.size() || !is_consonant_at(stem, n - r.ending.size() - 1)) continue;
    }
    return stem + "e";
  }
  if (n == 3 && is_consonant_at(stem, 0) && is_vowel(stem[1]) && is_consonant_at(stem, 2) &&
      std::string_view("wxy").find(stem[2]) == std::string_view::npos) {
    return stem + "e";  // mak -> make
  }
  return stem;
}

bool viable_stem(std::string_view stem) { return stem.size() >= 2 && has_vowel(stem); }

std::string lemma_step(const std::string& w, const ExceptionTable& exceptions) {
  if (auto it = exceptions.find(w); it != exceptions.end()) return it->second;
  if (w.size() <= 3) return w;
  std::string_view v = w;
  if (ends_with(v, "ies")) return w.size() > 4 ? w.substr(0, w.size() - 3) + "y" : w;
  if (ends_with(v, "sses")) return w.substr(0, w.size() - 2);
  if (ends_with(v, "ches") || ends_with(v, "shes") || ends_with(v, "xes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(v, "s")) {
    if (ends_with(v, "ss") || ends_with(v, "us") || ends_with(v, "is")) return w;
    return w.substr(0, w.size() - 1);
  }
  if (ends_with(v, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    return viable_stem(stem) ? restore(std::move(stem)) : w;
  }
  if (ends_with(v, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(v, "ed") && !ends_with(v, "eed")) {
    std::string stem = w.substr(0, w.size() - 2);
    return viable_stem(stem) ? restore(std::move(stem)) : w;
  }
  return w;
}

}  // namespace

std::string lemmatize(std::string_view word, const ExceptionTable& exceptions) {
  std::string current(word);
  // Every rule except the exception table shortens the word, so a handful of
  // rounds always reaches the fixed point.
  for (int round = 0; round < 8; ++round) {
    std::string next = lemma_step(current, exceptions);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

TermTokens normalize_term(std::string_view raw) {
  TermTokens out;
  for (auto& word : split_term(raw)) {
    std::string lemma = lemmatize(word);
    if (!lemma.empty()) out.tokens.push_back(std::move(lemma));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out(1);
  for (char ch : line) {
    if (ch == sep) {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const auto& raw_line : split_fields(text, '\n')) {
    ++line_no;
    std::string_view line = raw_line;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    std::vector<std::string> synset;
    for (const auto& field : split_fields(line, ',')) {
      std::string_view entry = trim(field);
      if (entry.empty()) throw FormatError(line_no, "empty lemma in synset");
      for (char ch : entry) {
        if (!is_lower(ch) && !is_digit(ch) && ch != ' ' && ch != '-' && ch != '_') {
          throw FormatError(line_no, "lemma '" + std::string(entry) +
                                         "' must be lowercase letters, digits, spaces, '-' or '_'");
        }
      }
      std::string key = normalize_term(entry).joined("");
      if (key.empty()) throw FormatError(line_no, "empty lemma in synset");
      if (std::find(synset.begin(), synset.end(), key) == synset.end()) synset.push_back(key);
    }
    if (synset.size() < 2) throw FormatError(line_no, "synset needs at least two distinct lemmas");
    std::size_t id = lex.synsets_.size();
    for (const auto& lemma : synset) lex.index_[lemma].push_back(id);
    lex.synsets_.push_back(std::move(synset));
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Lexicon::share_synset(const std::string& a, const std::string& b) const {
  auto ia = index_.find(a);
  if (ia == index_.end()) return false;
  auto ib = index_.find(b);
  if (ib == index_.end()) return false;
  for (auto id : ia->second) {
    if (std::find(ib->second.begin(), ib->second.end(), id) != ib->second.end()) return true;
  }
  return false;
}

bool synonyms(const Lexicon& lexicon, const TermTokens& a, const TermTokens& b) {
  if (a.empty() || b.empty() || a == b) return false;
  std::string ja = a.joined(""), jb = b.joined("");
  if (ja == jb || lexicon.share_synset(ja, jb)) return true;
  if (a.tokens.size() != b.tokens.size() || a.tokens.size() < 2) return false;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    if (a.tokens[i] != b.tokens[i] && !lexicon.share_synset(a.tokens[i], b.tokens[i])) return false;
  }
  return true;
}

}  // namespace axiom_align
