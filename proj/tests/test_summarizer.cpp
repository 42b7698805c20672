#include <random>

#include "doctest.h"
#include "newslens/error.hpp"
#include "newslens/summarizer.hpp"
#include "newslens/text.hpp"
#include "support.hpp"

using namespace newslens;
using testing::day;
using testing::doc;

namespace {

const char* kAssadDoc =
    "Bashar al-Assad was born in Damascus on September 11, 1965. "
    "Bashar al-Assad was the third of President Assad's five children. "
    "He studied medicine in London.";

SentenceCandidate candidate(std::string id, std::string_view date, int tier) {
  SentenceCandidate c;
  c.doc_id = std::move(id);
  c.date = day(date);
  c.tier = tier;
  return c;
}

std::string substr_chars(const std::string& s, Span chars) {
  const auto decoded = text::decode_utf8(s);
  const std::size_t b = chars.begin < decoded.size() ? decoded[chars.begin].byte_offset : s.size();
  const std::size_t e = chars.end < decoded.size() ? decoded[chars.end].byte_offset : s.size();
  return s.substr(b, e - b);
}

}  // namespace

TEST_SUITE("summarizer") {
  TEST_CASE("tier 0 needs both Q and F in one sentence") {
    std::vector<Document> docs{doc("assad", "2000-06-10", kAssadDoc), doc("other", "2000-07-01", "Rain fell.")};
    const auto b = build_index(std::move(docs));
    const auto d = *b.find_doc("assad");
    const auto q = parse_query(b, "Bashar al-Assad");
    const auto f = parse_facet(b, std::string("President Assad"));
    const auto c = select_document_sentence(b, d, q, f);
    CHECK(c.tier == 0);
    CHECK(c.sentence_index == 1);
    CHECK(c.text == "Bashar al-Assad was the third of President Assad's five children.");
    int q_marks = 0, f_marks = 0;
    for (const auto& h : c.highlights) {
      const std::string marked = substr_chars(c.text, h.chars);
      if (h.kind == HighlightKind::Query) {
        ++q_marks;
        CHECK((marked == "Bashar" || marked == "al-Assad"));
      } else {
        ++f_marks;
        CHECK(marked == "President Assad");
      }
    }
    CHECK(q_marks == 2);
    CHECK(f_marks == 1);

    // Without F: the first sentence containing Q, tier 1.
    const auto plain = select_document_sentence(b, d, q, std::nullopt);
    CHECK(plain.tier == 1);
    CHECK(plain.sentence_index == 0);
  }

  TEST_CASE("earliest sentence wins ties, tier 2 falls back to the first sentence") {
    std::vector<Document> docs{doc("t", "2001-01-01",
                                   "Markets opened. Prices rose. Nothing happened. Oil and gas rallied. "
                                   "Quiet day. Calm day. Still calm. Oil and gas fell.")};
    const auto b = build_index(std::move(docs));
    const auto q = parse_query(b, "oil gas");
    const auto c = select_document_sentence(b, 0, q, std::nullopt);
    CHECK(c.tier == 1);
    CHECK(c.sentence_index == 3);
    const auto none = select_document_sentence(b, 0, parse_query(b, "prices markets"), std::nullopt);
    CHECK(none.tier == 2);
    CHECK(none.sentence_index == 0);
  }

  TEST_CASE("pool has one candidate per selected document") {
    const auto docs = testing::toy_corpus(6);
    const auto b = build_index(docs);
    const std::string q = testing::first_word(b, 0);
    const SelectionState state{q, std::nullopt, std::nullopt};
    const auto pool = build_sentence_pool(b, state);
    const auto sel = match_documents(b, state);
    CHECK(pool.candidates.size() == sel.docs.size());
    std::set<std::string> seen;
    for (const auto& c : pool.candidates) {
      CHECK(seen.insert(c.doc_id).second);
      CHECK(c.tier != 0);
    }
    const auto empty = build_sentence_pool(b, SelectionState{"zzzz", std::nullopt, std::nullopt});
    CHECK(empty.candidates.empty());
  }

  TEST_CASE("sampling keeps tiers in order") {
    SentencePool pool;
    const int tiers[] = {2, 1, 0, 2, 1, 2, 0, 1, 2, 2};
    for (int i = 0; i < 10; ++i) {
      pool.candidates.push_back(candidate("c" + std::to_string(i), i % 2 ? "2000-01-05" : "2000-03-05", tiers[i]));
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto out = sample_summary(pool, seed);
      REQUIRE(out.size() == 10);
      CHECK(out[0].tier == 0);
      CHECK(out[1].tier == 0);
      for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1].tier <= out[i].tier);
      std::set<std::string> ids;
      for (const auto& c : out) ids.insert(c.doc_id);
      CHECK(ids.size() == 10);
    }
  }

  TEST_CASE("sampling is deterministic in the seed") {
    SentencePool pool;
    for (int i = 0; i < 40; ++i) {
      pool.candidates.push_back(candidate("c" + std::to_string(i), "2000-0" + std::to_string(1 + i % 9) + "-01", i % 3));
    }
    CHECK(sample_order(pool, 17) == sample_order(pool, 17));
    bool differs = false;
    for (std::uint64_t s = 1; s < 10 && !differs; ++s) differs = sample_order(pool, 17) != sample_order(pool, 17 + s);
    CHECK(differs);

    SentencePool single;
    single.candidates.push_back(candidate("only", "2000-01-01", 2));
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(sample_summary(single, s).front().doc_id == "only");
    CHECK(sample_order(SentencePool{}, 3).empty());
  }

  TEST_CASE("first draw follows monthly proportions") {
    SentencePool pool;
    for (int i = 0; i < 100; ++i) pool.candidates.push_back(candidate("a" + std::to_string(i), "1999-02-10", 1));
    for (int i = 0; i < 900; ++i) pool.candidates.push_back(candidate("b" + std::to_string(i), "1999-07-10", 1));
    int first_a = 0;
    const int runs = 2000;
    for (int s = 0; s < runs; ++s) first_a += pool.candidates[sample_order(pool, s).front()].date.month == 2;
    const double freq = static_cast<double>(first_a) / runs;
    CHECK(freq > 0.07);
    CHECK(freq < 0.13);
  }

  TEST_CASE("pagination") {
    std::vector<SentenceCandidate> items;
    for (int i = 0; i < 25; ++i) items.push_back(candidate("c" + std::to_string(i), "2000-01-01", 1));
    const auto p2 = paginate_summary(items, 2);
    REQUIRE(p2.items.size() == 5);
    CHECK(p2.items.front().doc_id == "c20");
    CHECK(p2.items.back().doc_id == "c24");
    CHECK(p2.total == 25);
    const auto p5 = paginate_summary(items, 5);
    CHECK(p5.items.empty());
    CHECK(p5.total == 25);
    CHECK_THROWS_AS(paginate_summary(items, -1), InvalidArgument);
    CHECK_THROWS_AS(paginate_summary(items, 0, 0), InvalidArgument);
    CHECK(paginate_summary(items, 0, 7).items.size() == 7);
    CHECK(paginate(items, std::numeric_limits<std::int64_t>::max()).items.empty());
  }
}
