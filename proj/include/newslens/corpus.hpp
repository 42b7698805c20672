#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newslens/date.hpp"

namespace newslens {

/// Coarse part-of-speech tagset; the noun-phrase pattern only needs these classes.
enum class Pos : std::uint8_t { Noun, Propn, Adj, Det, Adp, Verb, Num, Punct, Other };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view s);

/// Half-open [begin, end) range.
struct Span {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  std::uint32_t size() const { return end - begin; }
  bool empty() const { return begin >= end; }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::string surface;
  std::string normalized;
  std::optional<Pos> pos;  // empty until tagged
  std::uint32_t char_offset = 0;
  std::uint32_t byte_offset = 0;
  std::uint32_t sentence_index = 0;

  std::uint32_t char_end() const;
  std::uint32_t byte_end() const { return byte_offset + static_cast<std::uint32_t>(surface.size()); }
};

struct Sentence {
  std::uint32_t index = 0;
  Span char_span;
  Span token_span;
};

struct Document {
  std::string id;
  Date date;
  std::string title;
  std::string text;
  std::vector<Sentence> sentences;
  std::vector<Token> tokens;

  bool tagged() const;
};

/// Splits on Unicode whitespace. Punctuation becomes its own token except
/// word-internal hyphens and apostrophes, digit-internal '.' and ',', known
/// abbreviations and dotted initialisms. A possessive "'s" is split off.
std::vector<Token> tokenize(std::string_view text);

/// Sentence boundaries fall after '.', '!' or '?' (plus closing quotes or
/// brackets) when followed by whitespace and an uppercase letter or digit.
std::vector<Sentence> segment_sentences(std::string_view text);

/// Segments an already tokenized text and writes each token's sentence_index.
std::vector<Sentence> segment_tokens(std::span<Token> tokens);

/// Deterministic rule-based tagger. Expects sentence_index to be filled.
std::vector<Token> tag_pos(std::vector<Token> tokens);

/// Tokenizes, segments and tags raw text into a Document.
Document analyze_document(std::string id, Date date, std::string title, std::string text);

/// Reads a JSONL corpus. Throws ParseError naming the line or document id.
std::vector<Document> parse_corpus(std::istream& in);
std::vector<Document> parse_corpus_file(const std::string& path);

/// Number of documents run through analyze_document (or the pre-tagged
/// path) by this process. Query paths must never move it.
std::uint64_t analyzed_document_count();

}  // namespace newslens
