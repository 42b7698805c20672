#include <random>

#include "doctest.h"
#include "newslens/error.hpp"
#include "newslens/phrases.hpp"
#include "newslens/text.hpp"
#include "support.hpp"

using namespace newslens;

namespace {

std::set<std::string> phrases_of(const Document& d) {
  std::set<std::string> out;
  for (const auto& p : extract_noun_phrases(d)) out.insert(p.normalized);
  return out;
}

Token token(std::string surface, Pos pos) {
  Token t;
  t.normalized = text::fold_case(surface);
  t.surface = std::move(surface);
  t.pos = pos;
  return t;
}

std::string letters(const std::vector<Pos>& tags) {
  std::string s;
  for (Pos p : tags) s += testing::tag_letter(p);
  return s;
}

}  // namespace

TEST_SUITE("phrases") {
  TEST_CASE("pattern enumeration examples") {
    const std::vector<Pos> pp{Pos::Propn, Pos::Propn};
    CHECK(noun_phrase_spans(pp) == std::vector<Span>{{0, 1}, {0, 2}, {1, 2}});
    const std::vector<Pos> det{Pos::Det};
    CHECK(noun_phrase_spans(det).empty());
    const std::vector<Pos> an{Pos::Adj, Pos::Noun};
    CHECK(noun_phrase_spans(an) == std::vector<Span>{{0, 2}, {1, 2}});
  }

  TEST_CASE("extract from analyzed text") {
    const auto d = testing::doc("d", "2000-01-01", "They met President Assad. The eldest son came.");
    const auto phrases = phrases_of(d);
    CHECK(phrases.count("president assad"));
    CHECK(phrases.count("president"));
    CHECK(phrases.count("assad"));
    CHECK(phrases.count("eldest son"));
    CHECK(phrases.count("son"));
    CHECK_FALSE(phrases.count("eldest"));

    const auto k = testing::doc("k", "2000-01-01", "Crowds greeted King Abdullah II in the capital.");
    const auto family = phrases_of(k);
    CHECK(family.count("king abdullah ii"));
    CHECK(family.count("king abdullah"));
    CHECK(family.count("abdullah ii"));
    CHECK(family.count("king abdullah ii in the capital"));
  }

  TEST_CASE("prepositional attachment") {
    const std::vector<Pos> tags{Pos::Noun, Pos::Adp, Pos::Det, Pos::Adj, Pos::Noun};
    CHECK(matches_noun_phrase(tags));
    const std::vector<Pos> dangling{Pos::Noun, Pos::Adp, Pos::Det};
    CHECK_FALSE(matches_noun_phrase(dangling));
    const std::vector<Pos> two_pp{Pos::Noun, Pos::Adp, Pos::Noun, Pos::Adp, Pos::Noun};
    CHECK_FALSE(matches_noun_phrase(two_pp));
    const std::vector<Pos> adj_only{Pos::Adj};
    CHECK_FALSE(matches_noun_phrase(adj_only));
  }

  TEST_CASE("spans never cross sentences and respect the length cap") {
    for (const auto& d : testing::toy_corpus(11)) {
      for (const auto& p : extract_noun_phrases(d)) {
        CHECK(p.token_span.size() >= 1);
        CHECK(p.token_span.size() <= kMaxPhraseLength);
        const auto& s = d.sentences[p.sentence_index];
        CHECK(s.token_span.begin <= p.token_span.begin);
        CHECK(p.token_span.end <= s.token_span.end);
        for (auto t = p.token_span.begin; t < p.token_span.end; ++t) {
          const Pos pos = *d.tokens[t].pos;
          CHECK(pos != Pos::Punct);
          CHECK(pos != Pos::Verb);
          CHECK(pos != Pos::Other);
        }
      }
    }
  }

  TEST_CASE("automaton agrees with a regex oracle on random tag strings") {
    std::mt19937_64 rng(42);
    const std::vector<Pos> alphabet{Pos::Noun, Pos::Propn, Pos::Adj, Pos::Det, Pos::Adp,
                                    Pos::Verb, Pos::Num,   Pos::Punct, Pos::Other};
    for (int trial = 0; trial < 3000; ++trial) {
      std::vector<Pos> tags(1 + rng() % 14);
      for (auto& p : tags) p = alphabet[rng() % (trial % 2 ? 5 : alphabet.size())];
      const std::string s = letters(tags);
      CHECK(matches_noun_phrase(tags) == testing::regex_noun_phrase(s));
      std::vector<Span> expected;
      for (const auto& [i, j] : testing::oracle_spans(s)) {
        expected.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
      CHECK(noun_phrase_spans(tags) == expected);
    }
  }

  TEST_CASE("sub-span cap applies per maximal match") {
    const std::vector<Pos> nouns(6, Pos::Noun);
    const auto spans = noun_phrase_spans(nouns);
    CHECK(spans.size() == kMaxSpansPerMatch);
    const std::vector<Pos> long_run(9, Pos::Noun);
    for (const auto& s : noun_phrase_spans(long_run)) CHECK(s.size() <= kMaxPhraseLength);
  }

  TEST_CASE("normalize_phrase") {
    const std::vector<Token> pa{token("President", Pos::Propn), token("Assad", Pos::Propn)};
    CHECK(normalize_phrase(pa) == "president assad");
    const std::vector<Token> years{token("30", Pos::Num), token("years", Pos::Noun)};
    CHECK(normalize_phrase(years) == "30 years");
    const std::vector<Token> us{token("U.S.", Pos::Propn), token(",", Pos::Punct)};
    CHECK(normalize_phrase(us) == "u.s.");
    const std::vector<Token> punct{token(",", Pos::Punct)};
    CHECK_THROWS_AS(normalize_phrase(punct), InvalidArgument);
  }

  TEST_CASE("untagged document is rejected") {
    Document d;
    d.id = "raw";
    d.text = "Hello world";
    d.tokens = tokenize(d.text);
    d.sentences = segment_tokens(d.tokens);
    CHECK_THROWS_AS(extract_noun_phrases(d), InvalidArgument);
  }
}
