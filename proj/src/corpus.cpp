#include "newslens/corpus.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"

#include "newslens/error.hpp"
#include "newslens/text.hpp"

namespace newslens {

namespace {

using text::CodePoint;

std::atomic<std::uint64_t> g_analyzed_documents{0};

constexpr std::array<std::string_view, 9> kPosNames = {
    "NOUN", "PROPN", "ADJ", "DET", "ADP", "VERB", "NUM", "PUNCT", "OTHER"};

// Abbreviations that keep their trailing period. Dotted initialisms
// ("U.S.", "e.g.", "D.C.") are recognised structurally instead.
constexpr std::array<std::string_view, 34> kAbbreviations = {
    "mr.",   "mrs.", "ms.",   "dr.",   "st.",   "jr.",  "sr.",   "gen.",  "sen.",
    "rep.",  "gov.", "lt.",   "col.",  "sgt.",  "capt.", "prof.", "pres.", "inc.",
    "corp.", "co.",  "ltd.",  "vs.",   "jan.",  "feb.",  "aug.",  "sept.", "sep.",
    "oct.",  "nov.", "dec.",  "mt.",   "ft.",   "rev.",  "adm."};

const std::unordered_set<std::string_view> kDeterminers = {
    "the",  "a",     "an",   "this", "that", "these",   "those",    "his",     "her",
    "its",  "their", "our",  "my",   "your", "some",    "any",      "each",    "every",
    "no",   "all",   "both", "either", "neither", "another", "such", "whose"};

const std::unordered_set<std::string_view> kAdpositions = {
    "of",      "in",      "on",         "for",     "with",    "at",     "by",     "from",
    "to",      "into",    "onto",       "over",    "under",   "about",  "after",  "before",
    "during",  "between", "against",   "among",   "amid",    "through", "throughout",
    "without", "within",  "across",     "since",   "until",   "upon",   "near",   "toward",
    "towards", "behind",  "beyond",     "despite", "along",   "around", "via",    "per",
    "than",    "except",  "inside",     "outside", "below",   "above",  "beneath", "beside"};

const std::unordered_set<std::string_view> kOther = {
    "and",     "or",       "but",     "nor",     "so",       "yet",      "if",       "then",
    "because", "although", "though",  "while",   "whereas",  "whether",  "not",      "n't",
    "also",    "only",     "just",    "very",    "too",      "even",     "still",    "already",
    "never",   "ever",     "again",   "often",   "always",   "however",  "more",     "most",
    "less",    "least",    "much",    "many",    "few",      "several",  "i",        "me",
    "you",     "he",       "him",     "she",     "it",       "we",       "us",       "they",
    "them",    "himself",  "herself", "itself",  "themselves", "who",    "whom",     "which",
    "what",    "where",    "when",    "why",     "how",      "there",    "here",     "'s",
    "’s", "as",       "up",      "down",    "out",      "off",      "now",      "yesterday",
    "today",   "tomorrow", "ago",     "indeed",  "perhaps",  "almost",   "later",    "soon"};

const std::unordered_set<std::string_view> kVerbs = {
    "be",     "is",    "am",    "are",   "was",    "were",    "been",   "being", "has",
    "have",   "had",   "having", "do",   "does",   "did",     "done",   "will",  "would",
    "shall",  "should", "can",  "could", "may",    "might",   "must",   "said",  "says",
    "say",    "told",  "tell",  "made",  "make",   "makes",   "took",   "take",  "takes",
    "gave",   "give",  "gives", "went",  "go",     "goes",    "came",   "come",  "comes",
    "got",    "get",   "gets",  "met",   "meet",   "became",  "become", "becomes", "began",
    "begin",  "left",  "saw",   "see",   "seen",   "knew",    "know",   "known", "thought",
    "think",  "found", "find",  "held",  "hold",   "won",     "win",    "lost",  "sent",
    "spoke",  "wrote", "brought", "kept", "stood", "fell",    "paid",   "built", "sold",
    "felt",   "heard", "ran",   "led",   "seemed", "seems",   "remain", "remains"};

const std::unordered_set<std::string_view> kNumberWords = {
    "one",    "two",    "three",   "four",   "five",   "six",     "seven",   "eight",
    "nine",   "ten",    "eleven",  "twelve", "twenty", "thirty",  "forty",   "fifty",
    "sixty",  "hundred", "thousand", "million", "billion", "trillion", "dozen"};

const std::unordered_set<std::string_view> kAdjectives = {
    "eldest",   "oldest",   "youngest", "new",     "old",       "young",    "former",  "late",
    "early",    "big",      "small",    "large",   "great",     "good",     "bad",     "high",
    "low",      "long",     "short",    "major",   "minor",     "main",     "military", "political",
    "economic", "foreign",  "domestic", "public",  "private",   "human",    "civil",   "free",
    "full",     "other",    "same",     "own",     "last",      "next",     "first",   "second",
    "third",    "recent",   "current",  "certain", "whole",     "chief",    "senior",  "junior",
    "top",      "key",      "real",     "true",    "false",     "strong",   "weak",    "democratic",
    "islamic",  "arab",     "western",  "eastern", "northern",  "southern", "secret",  "prime",
    "deputy",   "acting",   "elected",  "exiled",  "interim",   "united"};

// Nouns that would otherwise hit an ADJ or VERB suffix rule.
const std::unordered_set<std::string_view> kSuffixExceptions = {
    "official",  "general",   "capital",  "hospital",  "trial",     "proposal",  "rival",
    "arrival",   "approval",  "festival", "signal",    "journal",   "animal",    "criminal",
    "total",     "metal",     "ritual",   "material",  "manual",    "terminal",  "tribunal",
    "executive", "representative", "detective", "archive", "objective", "initiative",
    "native",    "motive",    "incentive", "alternative", "offensive", "handful", "hundred",
    "speed",     "seed",      "need",     "breed",     "creed",     "greed",     "shred",
    "thing",     "nothing",   "something", "anything", "everything", "morning",  "evening",
    "building",  "meeting",   "spring",   "string",    "ceiling",   "wedding",   "feeling",
    "sibling",   "clothing",  "housing",  "ending",    "beginning", "painting",  "setting",
    "bombing",   "fighting",  "killing",  "shooting",  "hearing",   "briefing",  "funding",
    "training",  "uprising",  "warning",  "opening",   "ruling",    "beijing",   "sterling",
    "council",   "referral",  "denial",   "withdrawal", "survival", "burial",    "ally"};

bool is_terminal_punct(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool is_closing_punct(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == 0x2019 || cp == 0x201D ||
         cp == 0xBB;
}

bool is_opening_punct(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'(' || cp == U'[' || cp == 0x2018 || cp == 0x201C ||
         cp == 0xAB;
}

bool is_letter(char32_t cp) { return text::is_word(cp) && !text::is_digit(cp); }

// Length in code points of a dotted initialism ("U.S.", "e.g.") starting at
// `pos`, or 0. Requires at least two letter-period pairs.
std::size_t match_initialism(std::span<const CodePoint> cps, std::size_t pos, std::size_t end) {
  std::size_t i = pos;
  int pairs = 0;
  while (i + 1 < end && is_letter(cps[i].value) && cps[i + 1].value == U'.') {
    i += 2;
    ++pairs;
  }
  if (pairs < 2) return 0;
  if (i < end && text::is_word(cps[i].value)) return 0;
  return i - pos;
}

std::size_t match_abbreviation(std::span<const CodePoint> cps, std::size_t pos, std::size_t end) {
  for (std::string_view abbr : kAbbreviations) {
    if (pos + abbr.size() > end) continue;
    bool ok = true;
    for (std::size_t k = 0; k < abbr.size() && ok; ++k) {
      ok = text::fold_case(cps[pos + k].value) == static_cast<char32_t>(abbr[k]);
    }
    if (!ok) continue;
    const std::size_t after = pos + abbr.size();
    if (after < end && text::is_word(cps[after].value)) continue;
    return abbr.size();
  }
  return 0;
}

// Plain word: word characters plus internal hyphens/apostrophes and
// digit-internal separators.
std::size_t match_word(std::span<const CodePoint> cps, std::size_t pos, std::size_t end) {
  std::size_t j = pos;
  while (j < end) {
    const char32_t cp = cps[j].value;
    if (text::is_word(cp)) {
      ++j;
      continue;
    }
    const bool next_is_word = j + 1 < end && text::is_word(cps[j + 1].value);
    if (j > pos && next_is_word && (text::is_hyphen(cp) || text::is_apostrophe(cp))) {
      ++j;
      continue;
    }
    if (j > pos && (cp == U'.' || cp == U',') && text::is_digit(cps[j - 1].value) && j + 1 < end &&
        text::is_digit(cps[j + 1].value)) {
      ++j;
      continue;
    }
    break;
  }
  return j - pos;
}

Token make_token(std::string_view source, std::span<const CodePoint> cps, std::size_t begin,
                 std::size_t end) {
  Token t;
  const std::size_t byte_begin = cps[begin].byte_offset;
  const std::size_t byte_end = cps[end - 1].byte_offset + cps[end - 1].byte_length;
  t.surface = std::string(source.substr(byte_begin, byte_end - byte_begin));
  t.normalized = text::fold_case(t.surface);
  t.char_offset = static_cast<std::uint32_t>(begin);
  t.byte_offset = static_cast<std::uint32_t>(byte_begin);
  return t;
}

void tokenize_chunk(std::string_view source, std::span<const CodePoint> cps, std::size_t begin,
                    std::size_t end, std::vector<Token>& out) {
  std::size_t pos = begin;
  while (pos < end) {
    const char32_t cp = cps[pos].value;
    if (text::is_punct(cp)) {
      std::size_t run = pos + 1;
      while (run < end && cps[run].value == cp) ++run;
      out.push_back(make_token(source, cps, pos, run));
      pos = run;
      continue;
    }
    std::size_t len = match_abbreviation(cps, pos, end);
    if (len == 0) len = match_initialism(cps, pos, end);
    if (len == 0) {
      len = match_word(cps, pos, end);
      // Possessive clitic: "Assad's" -> "Assad" + "'s".
      if (len > 2 && text::is_apostrophe(cps[pos + len - 2].value) &&
          text::fold_case(cps[pos + len - 1].value) == U's') {
        out.push_back(make_token(source, cps, pos, pos + len - 2));
        out.push_back(make_token(source, cps, pos + len - 2, pos + len));
        pos += len;
        continue;
      }
    }
    out.push_back(make_token(source, cps, pos, pos + len));
    pos += len;
  }
}

bool all_of_cps(std::string_view s, bool (*pred)(char32_t)) {
  const auto cps = text::decode_utf8(s);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), [&](const CodePoint& c) {
    return pred(c.value);
  });
}

bool is_terminal_token(const Token& t) { return all_of_cps(t.surface, is_terminal_punct); }
bool is_closing_token(const Token& t) { return all_of_cps(t.surface, is_closing_punct); }

bool starts_sentence(const Token& t) {
  const auto cps = text::decode_utf8(t.surface);
  return !cps.empty() && (text::is_upper(cps[0].value) || text::is_digit(cps[0].value));
}

bool is_number_surface(std::string_view s) {
  if (s.empty() || s[0] < '0' || s[0] > '9') return false;
  std::size_t i = 0;
  while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '.' || s[i] == ',')) ++i;
  if (i == s.size()) return true;
  const std::string_view rest = s.substr(i);
  return rest == "s" || rest == "%" || rest == "st" || rest == "nd" || rest == "rd" || rest == "th";
}

bool is_capitalized(std::string_view surface) {
  const auto cps = text::decode_utf8(surface);
  bool segment_start = true;
  for (const auto& c : cps) {
    if (segment_start && text::is_upper(c.value)) return true;
    segment_start = text::is_hyphen(c.value);
  }
  return false;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Pos tag_token(const Token& token, bool sentence_initial) {
  const std::string_view norm = token.normalized;
  if (all_of_cps(token.surface, text::is_punct)) return Pos::Punct;
  if (is_number_surface(token.surface)) return Pos::Num;
  if (kDeterminers.contains(norm)) return Pos::Det;
  if (kAdpositions.contains(norm)) return Pos::Adp;
  if (kOther.contains(norm)) return Pos::Other;
  if (kVerbs.contains(norm)) return Pos::Verb;
  if (kNumberWords.contains(norm)) return Pos::Num;
  if (!sentence_initial && is_capitalized(token.surface)) return Pos::Propn;
  if (kAdjectives.contains(norm)) return Pos::Adj;
  if (kSuffixExceptions.contains(norm)) return Pos::Noun;
  if (norm.size() >= 5) {
    for (std::string_view suffix : {"ous", "ful", "ive", "al"}) {
      if (ends_with(norm, suffix)) return Pos::Adj;
    }
    if (ends_with(norm, "ed") || ends_with(norm, "ing")) return Pos::Verb;
  }
  return Pos::Noun;
}

Document analyze_pretagged(std::string id, Date date, std::string title, std::string body,
                           const nlohmann::json& tokens_json) {
  Document doc{std::move(id), date, std::move(title), std::move(body), {}, {}};
  const auto cps = text::decode_utf8(doc.text);
  if (!tokens_json.is_array()) {
    throw ParseError("document '" + doc.id + "': 'tokens' must be an array");
  }
  std::uint32_t prev_end = 0;
  std::uint32_t expected_sentence = 0;
  for (std::size_t i = 0; i < tokens_json.size(); ++i) {
    const auto& tj = tokens_json[i];
    const auto fail = [&](const std::string& why) {
      return ParseError("document '" + doc.id + "' token " + std::to_string(i) + ": " + why);
    };
    if (!tj.is_object() || !tj.contains("surface") || !tj.contains("pos") ||
        !tj.contains("char_offset") || !tj.contains("sentence_index")) {
      throw fail("expected {surface, pos, char_offset, sentence_index}");
    }
    Token t;
    t.surface = tj.at("surface").get<std::string>();
    const auto pos = parse_pos(tj.at("pos").get<std::string>());
    if (!pos) throw fail("unknown pos tag");
    t.pos = pos;
    const auto offset = tj.at("char_offset").get<std::int64_t>();
    const auto sentence = tj.at("sentence_index").get<std::int64_t>();
    if (t.surface.empty()) throw fail("empty surface");
    if (offset < 0 || static_cast<std::size_t>(offset) >= cps.size()) throw fail("char_offset out of range");
    t.char_offset = static_cast<std::uint32_t>(offset);
    if (i > 0 && t.char_offset < prev_end) throw fail("char_offset overlaps previous token");
    t.byte_offset = cps[t.char_offset].byte_offset;
    if (doc.text.compare(t.byte_offset, t.surface.size(), t.surface) != 0) {
      throw fail("surface does not match text at char_offset");
    }
    if (sentence < 0) throw fail("negative sentence_index");
    t.sentence_index = static_cast<std::uint32_t>(sentence);
    if (i == 0 ? t.sentence_index != 0
               : (t.sentence_index != expected_sentence && t.sentence_index != expected_sentence + 1)) {
      throw fail("sentence_index must start at 0 and increase by at most one");
    }
    expected_sentence = t.sentence_index;
    t.normalized = text::fold_case(t.surface);
    prev_end = t.char_end();
    doc.tokens.push_back(std::move(t));
  }
  for (std::uint32_t i = 0; i < doc.tokens.size();) {
    std::uint32_t j = i;
    while (j < doc.tokens.size() && doc.tokens[j].sentence_index == doc.tokens[i].sentence_index) ++j;
    doc.sentences.push_back(Sentence{doc.tokens[i].sentence_index,
                                     {doc.tokens[i].char_offset, doc.tokens[j - 1].char_end()},
                                     {i, j}});
    i = j;
  }
  g_analyzed_documents.fetch_add(1, std::memory_order_relaxed);
  return doc;
}

}  // namespace

std::string_view to_string(Pos pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

std::optional<Pos> parse_pos(std::string_view s) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == s) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

std::uint32_t Token::char_end() const {
  return char_offset + static_cast<std::uint32_t>(text::count_code_points(surface));
}

bool Document::tagged() const {
  return std::all_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.pos.has_value(); });
}

std::vector<Token> tokenize(std::string_view source) {
  const auto cps = text::decode_utf8(source);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (text::is_space(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !text::is_space(cps[j].value)) ++j;
    tokenize_chunk(source, cps, i, j, out);
    i = j;
  }
  return out;
}

std::vector<Sentence> segment_tokens(std::span<Token> tokens) {
  std::vector<Sentence> sentences;
  std::uint32_t start = 0;
  const auto close = [&](std::uint32_t end) {
    const auto index = static_cast<std::uint32_t>(sentences.size());
    for (std::uint32_t k = start; k < end; ++k) tokens[k].sentence_index = index;
    sentences.push_back(Sentence{index, {tokens[start].char_offset, tokens[end - 1].char_end()}, {start, end}});
    start = end;
  };
  for (std::uint32_t i = 0; i < tokens.size(); ++i) {
    if (!is_terminal_token(tokens[i])) continue;
    std::uint32_t last = i;
    while (last + 1 < tokens.size() && tokens[last + 1].char_offset == tokens[last].char_end() &&
           is_closing_token(tokens[last + 1])) {
      ++last;
    }
    const std::uint32_t next = last + 1;
    if (next >= tokens.size()) break;
    if (tokens[next].char_offset == tokens[last].char_end()) continue;  // no whitespace
    std::uint32_t head = next;
    if (all_of_cps(tokens[head].surface, is_opening_punct) && head + 1 < tokens.size()) ++head;
    if (!starts_sentence(tokens[head])) continue;
    close(next);
    i = last;
  }
  if (start < tokens.size()) close(static_cast<std::uint32_t>(tokens.size()));
  return sentences;
}

std::vector<Sentence> segment_sentences(std::string_view source) {
  auto tokens = tokenize(source);
  return segment_tokens(tokens);
}

std::vector<Token> tag_pos(std::vector<Token> tokens) {
  std::optional<std::uint32_t> current_sentence;
  bool seen_word = false;
  for (auto& t : tokens) {
    if (!current_sentence || *current_sentence != t.sentence_index) {
      current_sentence = t.sentence_index;
      seen_word = false;
    }
    const Pos pos = tag_token(t, !seen_word);
    if (pos != Pos::Punct) seen_word = true;
    t.pos = pos;
  }
  return tokens;
}

Document analyze_document(std::string id, Date date, std::string title, std::string body) {
  Document doc{std::move(id), date, std::move(title), std::move(body), {}, {}};
  auto tokens = tokenize(doc.text);
  doc.sentences = segment_tokens(tokens);
  doc.tokens = tag_pos(std::move(tokens));
  g_analyzed_documents.fetch_add(1, std::memory_order_relaxed);
  return doc;
}

std::vector<Document> parse_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    for (const char* key : {"id", "date", "text"}) {
      if (!j.contains(key) || !j.at(key).is_string()) {
        throw ParseError(where + ": missing or non-string key '" + key + "'");
      }
    }
    std::string id = j.at("id").get<std::string>();
    const auto date = Date::parse(j.at("date").get<std::string>());
    if (!date) {
      throw ParseError("document '" + id + "': invalid date '" + j.at("date").get<std::string>() + "'");
    }
    if (!seen.insert(id).second) {
      throw ParseError(where + ": duplicate document id '" + id + "'");
    }
    std::string title = j.contains("title") && j.at("title").is_string() ? j.at("title").get<std::string>() : "";
    std::string body = j.at("text").get<std::string>();
    try {
      if (j.contains("tokens") && !j.at("tokens").is_null()) {
        docs.push_back(analyze_pretagged(std::move(id), *date, std::move(title), std::move(body), j.at("tokens")));
      } else {
        docs.push_back(analyze_document(std::move(id), *date, std::move(title), std::move(body)));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return docs;
}

std::vector<Document> parse_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open corpus file '" + path + "'");
  return parse_corpus(in);
}

std::uint64_t analyzed_document_count() { return g_analyzed_documents.load(std::memory_order_relaxed); }

}  // namespace newslens
