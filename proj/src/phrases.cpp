#include "newslens/phrases.hpp"

#include <algorithm>

#include "newslens/error.hpp"
#include "newslens/text.hpp"

namespace newslens {

namespace {

// DFA over the noun-phrase pattern. States 1 and 5 accept (a head noun was
// just read); 3 and 4 are inside the prepositional attachment.
enum State : int { kStart = 0, kHead, kModifier, kAfterAdp, kAfterDet, kPpHead, kPpModifier, kReject };

bool is_head(Pos p) { return p == Pos::Noun || p == Pos::Propn; }
bool is_modifier_only(Pos p) { return p == Pos::Adj || p == Pos::Num; }

State step(State s, Pos p) {
  switch (s) {
    case kStart:
    case kModifier:
      if (is_head(p)) return kHead;
      if (is_modifier_only(p)) return kModifier;
      return kReject;
    case kHead:
      if (is_head(p)) return kHead;
      if (is_modifier_only(p)) return kModifier;
      if (p == Pos::Adp) return kAfterAdp;
      return kReject;
    case kAfterAdp:
      if (p == Pos::Det) return kAfterDet;
      [[fallthrough]];
    case kAfterDet:
    case kPpHead:
    case kPpModifier:
      if (is_head(p)) return kPpHead;
      if (is_modifier_only(p)) return kPpModifier;
      return kReject;
    case kReject:
      break;
  }
  return kReject;
}

bool accepting(State s) { return s == kHead || s == kPpHead; }

bool contains(const Span& outer, const Span& inner) {
  return outer.begin <= inner.begin && inner.end <= outer.end;
}

bool is_punct_token(const Token& t) {
  if (t.pos) return *t.pos == Pos::Punct;
  const auto cps = text::decode_utf8(t.surface);
  return std::all_of(cps.begin(), cps.end(), [](const text::CodePoint& c) { return text::is_punct(c.value); });
}

}  // namespace

bool matches_noun_phrase(std::span<const Pos> tags) {
  State s = kStart;
  for (Pos p : tags) {
    s = step(s, p);
    if (s == kReject) return false;
  }
  return accepting(s);
}

std::vector<Span> noun_phrase_spans(std::span<const Pos> tags) {
  std::vector<Span> matches;
  for (std::size_t begin = 0; begin < tags.size(); ++begin) {
    State s = kStart;
    const std::size_t limit = std::min(tags.size(), begin + kMaxPhraseLength);
    for (std::size_t end = begin; end < limit; ++end) {
      s = step(s, tags[end]);
      if (s == kReject) break;
      if (accepting(s)) {
        matches.push_back({static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end + 1)});
      }
    }
  }
  if (matches.empty()) return matches;

  std::vector<Span> maximal;
  for (const auto& m : matches) {
    const bool dominated = std::any_of(matches.begin(), matches.end(), [&](const Span& other) {
      return other != m && contains(other, m);
    });
    if (!dominated) maximal.push_back(m);
  }

  // Each match belongs to the first maximal match containing it.
  std::vector<std::vector<Span>> groups(maximal.size());
  for (const auto& m : matches) {
    for (std::size_t g = 0; g < maximal.size(); ++g) {
      if (contains(maximal[g], m)) {
        groups[g].push_back(m);
        break;
      }
    }
  }
  std::vector<Span> out;
  for (auto& group : groups) {
    if (group.size() > kMaxSpansPerMatch) {
      std::stable_sort(group.begin(), group.end(), [](const Span& a, const Span& b) {
        return a.size() != b.size() ? a.size() > b.size() : a.begin < b.begin;
      });
      group.resize(kMaxSpansPerMatch);
    }
    out.insert(out.end(), group.begin(), group.end());
  }
  std::sort(out.begin(), out.end(), [](const Span& a, const Span& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  return out;
}

std::vector<PhraseSpan> extract_noun_phrases(const Document& doc) {
  if (!doc.tagged()) {
    throw InvalidArgument("document '" + doc.id + "' is not POS-tagged");
  }
  std::vector<PhraseSpan> out;
  std::vector<Pos> tags;
  for (const auto& sentence : doc.sentences) {
    tags.clear();
    for (std::uint32_t i = sentence.token_span.begin; i < sentence.token_span.end; ++i) {
      tags.push_back(*doc.tokens[i].pos);
    }
    for (const Span& local : noun_phrase_spans(tags)) {
      const Span span{sentence.token_span.begin + local.begin, sentence.token_span.begin + local.end};
      out.push_back(PhraseSpan{
          doc.id, span, sentence.index,
          normalize_phrase(std::span<const Token>(doc.tokens).subspan(span.begin, span.size()))});
    }
  }
  return out;
}

std::string normalize_phrase(std::span<const Token> tokens) {
  std::size_t end = tokens.size();
  while (end > 0 && is_punct_token(tokens[end - 1])) --end;
  if (end == 0) {
    throw InvalidArgument("cannot normalize an empty or all-punctuation phrase");
  }
  std::string out;
  for (std::size_t i = 0; i < end; ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].normalized.empty() ? text::fold_case(tokens[i].surface) : tokens[i].normalized;
  }
  return out;
}

}  // namespace newslens
