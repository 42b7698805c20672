#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "newslens/corpus.hpp"

namespace newslens {

inline constexpr std::size_t kMaxPhraseLength = 6;
/// Sub-spans kept per maximal match, bounding the quadratic enumeration.
inline constexpr std::size_t kMaxSpansPerMatch = 20;

struct PhraseSpan {
  std::string doc_id;
  Span token_span;  // document token indexes
  std::uint32_t sentence_index = 0;
  std::string normalized;
};

/// Whether a tag sequence is a noun phrase:
///   (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN) (ADP DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN))?
/// Length is not checked here.
bool matches_noun_phrase(std::span<const Pos> tags);

/// Every matching span of `tags` with length <= kMaxPhraseLength, capped at
/// kMaxSpansPerMatch per maximal match, ordered by (begin, end).
std::vector<Span> noun_phrase_spans(std::span<const Pos> tags);

/// Noun phrases of a tagged document, sentence by sentence. Throws
/// InvalidArgument for an untagged document.
std::vector<PhraseSpan> extract_noun_phrases(const Document& doc);

/// Case-folded surfaces joined by single spaces, trailing punctuation dropped.
std::string normalize_phrase(std::span<const Token> tokens);

}  // namespace newslens
