#pragma once

// Shared fixtures and brute-force oracles. The oracles work on analyzed
// Documents only and never consult the index.

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "newslens/corpus.hpp"
#include "newslens/index.hpp"
#include "newslens/synth.hpp"

namespace testing {

using namespace newslens;

inline Date day(std::string_view s) { return Date::parse_or_throw(s, "test date"); }

inline Document doc(std::string id, std::string_view date, std::string text) {
  return analyze_document(std::move(id), day(date), "", std::move(text));
}

/// Small synthetic corpus: at most 50 docs and 2,000 tokens.
inline std::vector<Document> toy_corpus(std::uint64_t seed = 7) {
  synth::CorpusOptions opt;
  opt.docs = 50;
  opt.tokens_per_doc = 30;
  opt.stories = 4;
  opt.surnames = 16;
  opt.years = 3;
  opt.seed = seed;
  std::vector<Document> docs;
  for (auto& raw : synth::generate_corpus(opt)) {
    docs.push_back(analyze_document(raw.id, raw.date, raw.title, raw.text));
  }
  return docs;
}

inline std::size_t token_total(const std::vector<Document>& docs) {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.tokens.size();
  return n;
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("newslens-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

/// Normalized form of the first non-punctuation token of a stored document.
inline std::string first_word(const IndexBundle& b, DocNum d) {
  for (const auto& t : b.doc(d).tokens) {
    if (t.pos != Pos::Punct) return b.term(t.term);
  }
  return "";
}

// ---- phrase oracle -------------------------------------------------------------

inline char tag_letter(Pos p) {
  switch (p) {
    case Pos::Noun: return 'N';
    case Pos::Propn: return 'P';
    case Pos::Adj: return 'A';
    case Pos::Det: return 'D';
    case Pos::Adp: return 'I';
    case Pos::Verb: return 'V';
    case Pos::Num: return 'C';
    case Pos::Punct: return '.';
    case Pos::Other: return 'O';
  }
  return '?';
}

inline bool regex_noun_phrase(const std::string& letters) {
  static const std::regex pattern("[ANPC]*[NP](ID?[ANPC]*[NP])?", std::regex::optimize);
  return std::regex_match(letters, pattern);
}

/// Sub-spans of one tag sequence matching the pattern, length <= 6, with
/// each sub-span credited to the first maximal match containing it and at
/// most 20 kept per maximal match (longest first, then earliest).
inline std::vector<std::pair<std::size_t, std::size_t>> oracle_spans(const std::string& letters) {
  using SpanPair = std::pair<std::size_t, std::size_t>;
  std::vector<SpanPair> all;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j <= letters.size() && j - i <= 6; ++j) {
      if (regex_noun_phrase(letters.substr(i, j - i))) all.emplace_back(i, j);
    }
  }
  const auto inside = [](const SpanPair& a, const SpanPair& b) { return b.first <= a.first && a.second <= b.second; };
  std::vector<SpanPair> maximal;
  for (const auto& s : all) {
    bool contained = false;
    for (const auto& t : all) contained = contained || (t != s && inside(s, t));
    if (!contained) maximal.push_back(s);
  }
  std::sort(maximal.begin(), maximal.end());
  std::map<std::size_t, std::vector<SpanPair>> groups;
  for (const auto& s : all) {
    for (std::size_t g = 0; g < maximal.size(); ++g) {
      if (inside(s, maximal[g])) {
        groups[g].push_back(s);
        break;
      }
    }
  }
  std::vector<SpanPair> out;
  for (auto& [g, members] : groups) {
    std::sort(members.begin(), members.end(), [](const SpanPair& a, const SpanPair& b) {
      const auto la = a.second - a.first, lb = b.second - b.first;
      return la != lb ? la > lb : a.first < b.first;
    });
    if (members.size() > 20) members.resize(20);
    out.insert(out.end(), members.begin(), members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Phrase occurrences per document, computed sentence by sentence.
inline std::map<std::string, std::size_t> oracle_phrase_counts(const Document& d) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : d.sentences) {
    std::string letters;
    for (auto t = s.token_span.begin; t < s.token_span.end; ++t) letters += tag_letter(*d.tokens[t].pos);
    for (const auto& [i, j] : oracle_spans(letters)) {
      std::string phrase;
      for (auto t = s.token_span.begin + i; t < s.token_span.begin + j; ++t) {
        if (!phrase.empty()) phrase += ' ';
        phrase += d.tokens[t].normalized;
      }
      ++counts[phrase];
    }
  }
  return counts;
}

struct CorpusOracle {
  std::vector<Document> docs;
  std::vector<std::map<std::string, std::size_t>> per_doc;
  std::map<std::string, std::size_t> corpus_count;
  std::map<std::string, std::size_t> df;

  explicit CorpusOracle(std::vector<Document> in) : docs(std::move(in)) {
    for (const auto& d : docs) {
      per_doc.push_back(oracle_phrase_counts(d));
      for (const auto& [p, c] : per_doc.back()) {
        corpus_count[p] += c;
        ++df[p];
      }
    }
  }

  bool indexed(const std::string& phrase) const {
    const auto it = corpus_count.find(phrase);
    return it != corpus_count.end() && it->second >= 5;
  }
};

// ---- selection oracle ----------------------------------------------------------

inline std::vector<std::string> words_of(const Document& d, Span tokens) {
  std::vector<std::string> out;
  for (auto t = tokens.begin; t < tokens.end; ++t) {
    if (d.tokens[t].pos != Pos::Punct) out.push_back(d.tokens[t].normalized);
  }
  return out;
}

inline std::vector<std::string> all_tokens_of(const Document& d, Span tokens) {
  std::vector<std::string> out;
  for (auto t = tokens.begin; t < tokens.end; ++t) out.push_back(d.tokens[t].normalized);
  return out;
}

inline bool has_all(const std::vector<std::string>& words, const std::vector<std::string>& terms) {
  return std::all_of(terms.begin(), terms.end(),
                     [&](const std::string& t) { return std::find(words.begin(), words.end(), t) != words.end(); });
}

inline bool has_run(const std::vector<std::string>& words, const std::vector<std::string>& seq) {
  if (seq.empty() || seq.size() > words.size()) return false;
  return std::search(words.begin(), words.end(), seq.begin(), seq.end()) != words.end();
}

inline Span whole(const Document& d) { return {0, static_cast<std::uint32_t>(d.tokens.size())}; }

/// Lowercased whitespace/punctuation-free split used to state Q and F terms.
inline std::vector<std::string> terms_of(std::string_view s) {
  const Document d = analyze_document("probe", Date{2000, 1, 1}, "", std::string(s));
  return words_of(d, whole(d));
}

/// Facet token sequence: every token, trailing punctuation trimmed.
inline std::vector<std::string> facet_terms_of(std::string_view s) {
  const Document d = analyze_document("probe", Date{2000, 1, 1}, "", std::string(s));
  Span span = whole(d);
  while (!span.empty() && d.tokens[span.end - 1].pos == Pos::Punct) --span.end;
  return all_tokens_of(d, span);
}

inline bool oracle_selected(const Document& d, const std::vector<std::string>& q,
                            const std::optional<std::vector<std::string>>& f, const std::optional<DateRange>& t) {
  if (t && !t->contains(d.date)) return false;
  if (!has_all(words_of(d, whole(d)), q)) return false;
  return !f || has_run(all_tokens_of(d, whole(d)), *f);
}

}  // namespace testing
