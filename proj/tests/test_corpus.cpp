#include <sstream>

#include "doctest.h"
#include "newslens/error.hpp"
#include "newslens/text.hpp"
#include "support.hpp"

using namespace newslens;
using testing::doc;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.surface);
  return out;
}

std::vector<Pos> tags(std::vector<std::string> words, std::uint32_t lead = 1) {
  // `lead` filler tokens keep the probe words off the sentence start.
  std::vector<Token> tokens;
  std::uint32_t offset = 0;
  for (std::uint32_t i = 0; i < lead; ++i) words.insert(words.begin(), "and");
  for (auto& w : words) {
    Token t;
    t.surface = w;
    t.normalized = text::fold_case(w);
    t.char_offset = t.byte_offset = offset;
    offset += static_cast<std::uint32_t>(w.size()) + 1;
    tokens.push_back(t);
  }
  std::vector<Pos> out;
  const auto tagged = tag_pos(tokens);
  for (std::size_t i = lead; i < tagged.size(); ++i) out.push_back(*tagged[i].pos);
  return out;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("tokenizer splits words and punctuation") {
    CHECK(surfaces("Bashar al-Assad ruled.") == std::vector<std::string>{"Bashar", "al-Assad", "ruled", "."});
    CHECK(surfaces("  ").empty());
    CHECK(surfaces("").empty());
    CHECK(surfaces("U.S.") == std::vector<std::string>{"U.S."});
    CHECK(surfaces("Mr. Smith") == std::vector<std::string>{"Mr.", "Smith"});
    CHECK(surfaces("It cost 1,200.50 dollars!") ==
          std::vector<std::string>{"It", "cost", "1,200.50", "dollars", "!"});
    CHECK(surfaces("don't stop...") == std::vector<std::string>{"don't", "stop", "..."});
    CHECK(surfaces("President Assad's five children") ==
          std::vector<std::string>{"President", "Assad", "'s", "five", "children"});
    CHECK(surfaces("(Reuters) said") == std::vector<std::string>{"(", "Reuters", ")", "said"});
  }

  TEST_CASE("token offsets are code points and bytes") {
    const auto tokens = tokenize("Café au lait");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[1].char_offset == 5);
    CHECK(tokens[1].byte_offset == 6);
    CHECK(tokens[0].char_end() == 4);
    CHECK(tokens[0].byte_end() == 5);
    CHECK(tokens[0].normalized == "café");
  }

  TEST_CASE("sentence segmentation") {
    CHECK(segment_sentences("A war began. It ended.").size() == 2);
    CHECK(segment_sentences("Mr. Smith left.").size() == 1);
    CHECK(segment_sentences("").empty());
    CHECK(segment_sentences("He left the U.S. Army today.").size() == 1);
    CHECK(segment_sentences("Really? Yes! 1990 was hard.").size() == 3);
    CHECK(segment_sentences("He said \"stop.\" Then he left.").size() == 2);
    CHECK(segment_sentences("prices fell. then rose.").size() == 1);

    const std::string text = "First one.  Second one here.";
    const auto sentences = segment_sentences(text);
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].char_span == Span{0, 10});
    CHECK(sentences[1].char_span == Span{12, 28});
    CHECK(sentences[1].token_span == Span{3, 7});
  }

  TEST_CASE("tagger rules") {
    CHECK(tags({"the", "eldest", "son"}) == std::vector<Pos>{Pos::Det, Pos::Adj, Pos::Noun});
    CHECK(tags({"."}) == std::vector<Pos>{Pos::Punct});
    CHECK(tags({"President", "Assad"}) == std::vector<Pos>{Pos::Propn, Pos::Propn});
    CHECK(tags({"1994", "30", "5%"}) == std::vector<Pos>{Pos::Num, Pos::Num, Pos::Num});
    CHECK(tags({"of", "in", "with"}) == std::vector<Pos>{Pos::Adp, Pos::Adp, Pos::Adp});
    CHECK(tags({"dangerous", "peaceful", "decisive", "political"}) ==
          std::vector<Pos>{Pos::Adj, Pos::Adj, Pos::Adj, Pos::Adj});
    CHECK(tags({"rejected", "walking"}) == std::vector<Pos>{Pos::Verb, Pos::Verb});
    CHECK(tags({"al-Assad"}) == std::vector<Pos>{Pos::Propn});
    // Sentence-initial capitals are not evidence of a proper noun.
    CHECK(tags({"The", "war"}, 0) == std::vector<Pos>{Pos::Det, Pos::Noun});
    CHECK(tags({"Refugees", "fled"}, 0)[0] == Pos::Noun);
  }

  TEST_CASE("tagging is deterministic") {
    const std::string text = "Bashar al-Assad was born in Damascus. He is the third of President Assad's five children.";
    const auto a = analyze_document("a", Date{2000, 1, 1}, "", text);
    const auto b = analyze_document("b", Date{2000, 1, 1}, "", text);
    REQUIRE(a.tokens.size() == b.tokens.size());
    for (std::size_t i = 0; i < a.tokens.size(); ++i) CHECK(a.tokens[i].pos == b.tokens[i].pos);
  }

  TEST_CASE("tokens reproduce the text") {
    for (const auto& d : testing::toy_corpus()) {
      std::string rebuilt;
      std::uint32_t byte = 0;
      for (const auto& t : d.tokens) {
        REQUIRE(t.byte_offset >= byte);
        for (char c : d.text.substr(byte, t.byte_offset - byte)) CHECK(std::isspace(static_cast<unsigned char>(c)));
        rebuilt += d.text.substr(byte, t.byte_offset - byte);
        rebuilt += t.surface;
        byte = t.byte_end();
      }
      rebuilt += d.text.substr(byte);
      CHECK(rebuilt == d.text);
    }
  }

  TEST_CASE("sentences cover tokens in order") {
    for (const auto& d : testing::toy_corpus(3)) {
      std::uint32_t next = 0;
      for (std::size_t i = 0; i < d.sentences.size(); ++i) {
        const auto& s = d.sentences[i];
        CHECK(s.index == i);
        CHECK(s.token_span.begin == next);
        CHECK(!s.token_span.empty());
        for (auto t = s.token_span.begin; t < s.token_span.end; ++t) CHECK(d.tokens[t].sentence_index == i);
        next = s.token_span.end;
      }
      CHECK(next == d.tokens.size());
    }
  }

  TEST_CASE("parse_corpus builds documents") {
    std::istringstream in(R"({"id":"d1","date":"2000-03-15","text":"Assad met aides."})"
                          "\n\n"
                          R"({"id":"d2","date":"2001-01-02","title":"T","text":"A war began. It ended."})"
                          "\n");
    const auto docs = parse_corpus(in);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].sentences.size() == 1);
    CHECK(docs[0].tokens.size() == 4);
    CHECK(docs[0].tokens.back().pos == Pos::Punct);
    CHECK(docs[1].title == "T");
    CHECK(docs[1].sentences.size() == 2);

    std::istringstream empty("");
    CHECK(parse_corpus(empty).empty());
  }

  TEST_CASE("parse_corpus errors name the culprit") {
    const auto message = [](const std::string& input) {
      std::istringstream in(input);
      try {
        parse_corpus(in);
      } catch (const ParseError& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    const auto dup = message(R"({"id":"d1","date":"2000-01-01","text":"a"})"
                             "\n"
                             R"({"id":"d1","date":"2000-01-02","text":"b"})");
    CHECK(dup.find("d1") != std::string::npos);
    CHECK(dup.find("duplicate") != std::string::npos);
    const auto bad = message(R"({"id":"d1","date":"2000-01-01","text":"a"})"
                             "\n{not json\n");
    CHECK(bad.find("line 2") != std::string::npos);
    const auto date = message(R"({"id":"d7","date":"2000-02-30","text":"a"})");
    CHECK(date.find("d7") != std::string::npos);
    const auto missing = message(R"({"id":"d8","date":"2000-02-03"})");
    CHECK(missing.find("line 1") != std::string::npos);
  }

  TEST_CASE("pre-tagged tokens are used verbatim") {
    std::istringstream in(
        R"({"id":"p1","date":"2000-01-01","text":"King Abdullah spoke. Crowds cheered.","tokens":[)"
        R"({"surface":"King","pos":"PROPN","char_offset":0,"sentence_index":0},)"
        R"({"surface":"Abdullah","pos":"PROPN","char_offset":5,"sentence_index":0},)"
        R"({"surface":"spoke","pos":"VERB","char_offset":14,"sentence_index":0},)"
        R"({"surface":".","pos":"PUNCT","char_offset":19,"sentence_index":0},)"
        R"({"surface":"Crowds","pos":"NOUN","char_offset":21,"sentence_index":1},)"
        R"({"surface":"cheered","pos":"VERB","char_offset":28,"sentence_index":1},)"
        R"({"surface":".","pos":"PUNCT","char_offset":35,"sentence_index":1}]})");
    const auto docs = parse_corpus(in);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].tokens[0].pos == Pos::Propn);
    CHECK(docs[0].sentences.size() == 2);
    CHECK(docs[0].sentences[1].char_span == Span{21, 36});

    std::istringstream wrong(
        R"({"id":"p2","date":"2000-01-01","text":"King spoke.","tokens":[)"
        R"({"surface":"Kong","pos":"PROPN","char_offset":0,"sentence_index":0}]})");
    CHECK_THROWS_AS(parse_corpus(wrong), ParseError);
  }

  TEST_CASE("malformed UTF-8 is rejected") {
    std::istringstream in("{\"id\":\"u\",\"date\":\"2000-01-01\",\"text\":\"a\xff\"}");
    CHECK_THROWS(parse_corpus(in));
  }

  TEST_CASE("dates") {
    CHECK(Date::parse("2000-02-29").has_value());
    CHECK_FALSE(Date::parse("1900-02-29").has_value());
    CHECK_FALSE(Date::parse("2000-1-01").has_value());
    CHECK(YearMonth{2000, 2}.last_day() == Date{2000, 2, 29});
    CHECK(YearMonth::from_index(YearMonth{1999, 12}.index() + 1) == YearMonth{2000, 1});
    CHECK(DateRange{Date{1999, 11, 30}, Date{2000, 2, 1}}.month_count() == 4);
  }
}
