#include <random>

#include "doctest.h"
#include "newslens/error.hpp"
#include "newslens/facets.hpp"
#include "support.hpp"

using namespace newslens;
using testing::day;
using testing::doc;

namespace {

SubjectScore subject(std::string phrase, std::uint64_t qf, std::uint32_t df) {
  SubjectScore s;
  s.phrase = std::move(phrase);
  s.qf = qf;
  s.df = df;
  return s;
}

std::vector<std::string> phrases(const std::vector<SubjectScore>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.phrase);
  return out;
}

std::vector<SubjectScore> sorted(std::vector<SubjectScore> v) {
  std::sort(v.begin(), v.end(), ranks_before);
  return v;
}

}  // namespace

TEST_SUITE("facets") {
  TEST_CASE("qf-idf ordering") {
    const auto a = subject("common thing", 10, 100);
    const auto b = subject("rare thing", 10, 10);
    CHECK(b.score() == doctest::Approx(1.0));
    CHECK(a.score() == doctest::Approx(0.1));
    CHECK(ranks_before(b, a));
    CHECK_FALSE(ranks_before(a, b));
    // Equal score: higher qf first, then the longer phrase, then phrase.
    CHECK(ranks_before(subject("x", 4, 2), subject("y", 2, 1)));
    CHECK(ranks_before(subject("king abdullah ii", 2, 1), subject("abdullah", 2, 1)));
    CHECK(ranks_before(subject("a", 2, 1), subject("b", 2, 1)));
  }

  TEST_CASE("scores over a hand-counted corpus") {
    std::vector<Document> docs;
    for (int i = 0; i < 6; ++i) {
      docs.push_back(doc("d" + std::to_string(i), "2000-0" + std::to_string(i + 1) + "-01",
                         i < 3 ? "Haiti held talks. Border talks stalled. Border talks resumed."
                               : "Cuba held border talks."));
    }
    const auto b = build_index(std::move(docs));
    const auto sel = match_documents(b, SelectionState{"haiti", std::nullopt, std::nullopt});
    const auto ranked = score_subjects(b, sel);
    const auto it = std::find_if(ranked.begin(), ranked.end(),
                                 [](const SubjectScore& s) { return s.phrase == "border talks"; });
    REQUIRE(it != ranked.end());
    CHECK(it->qf == 6);
    CHECK(it->df == 6);
    CHECK(it->score() == doctest::Approx(1.0));
    // "cuba" only occurs outside the selection.
    for (const auto& s : ranked) CHECK(s.phrase != "cuba");
    CHECK(std::is_sorted(ranked.begin(), ranked.end(), ranks_before));
    CHECK(score_subjects(b, std::vector<DocNum>{}).empty());

    // Phrase in every doc k times, whole-corpus selection: score k.
    const auto all = score_subjects(b, match_documents(b, SelectionState{"talks", std::nullopt, std::nullopt}));
    const auto talks = std::find_if(all.begin(), all.end(), [](const SubjectScore& s) { return s.phrase == "border talks"; });
    REQUIRE(talks != all.end());
    CHECK(talks->qf == 9);

    CHECK_THROWS_AS(score_subjects(b, match_documents(b, SelectionState{"haiti", std::string("talks"), std::nullopt})),
                    InvalidArgument);
  }

  TEST_CASE("rank order is invariant under positive rescaling of qf and df") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<SubjectScore> v;
      for (int i = 0; i < 30; ++i) v.push_back(subject("p" + std::to_string(i), 1 + rng() % 20, 1 + rng() % 20));
      auto scaled = v;
      const std::uint64_t k = 1 + rng() % 1000;
      for (auto& s : scaled) {
        s.qf *= k;
        s.df *= static_cast<std::uint32_t>(k);
      }
      CHECK(phrases(sorted(v)) == phrases(sorted(scaled)));
    }
  }

  TEST_CASE("similarity measures") {
    CHECK(levenshtein_distance("kitten", "sitting") == 3);
    CHECK(levenshtein_distance("", "abc") == 3);
    CHECK(levenshtein_distance("café", "cafe") == 1);
    CHECK(levenshtein_similarity("", "") == doctest::Approx(1.0));
    CHECK(levenshtein_similarity("abcd", "abcx") == doctest::Approx(0.75));
    CHECK(token_jaccard("king abdullah", "abdullah ii") == doctest::Approx(1.0 / 3.0));
    CHECK(token_jaccard("human rights", "human rights") == doctest::Approx(1.0));
    CHECK(token_jaccard("a b", "c d") == doctest::Approx(0.0));
  }

  TEST_CASE("dedup examples") {
    const std::vector<SubjectScore> family{subject("king abdullah", 9, 3), subject("abdullah ii", 6, 3),
                                           subject("king abdullah ii", 5, 3)};
    CHECK(phrases(dedup_subjects(family)) == std::vector<std::string>{"king abdullah"});

    const std::vector<SubjectScore> distinct{subject("human rights", 9, 3), subject("president clinton", 6, 3)};
    CHECK(phrases(dedup_subjects(distinct)) == std::vector<std::string>{"human rights", "president clinton"});

    const std::vector<SubjectScore> twice{subject("peace talks", 9, 3), subject("peace talks", 6, 3)};
    CHECK(dedup_subjects(twice).size() == 1);

    const std::vector<SubjectScore> spelling{subject("gaddafi regime", 9, 3), subject("qaddafi regime", 6, 3)};
    CHECK(dedup_subjects(spelling).size() == 1);

    const std::vector<SubjectScore> contained{subject("president clinton", 9, 3), subject("clinton", 6, 3),
                                              subject("white house", 5, 3)};
    CHECK(phrases(dedup_subjects(contained)) == std::vector<std::string>{"president clinton", "white house"});
  }

  TEST_CASE("dedup family collapses in every rank order") {
    std::vector<std::string> trio{"abdullah ii", "king abdullah", "king abdullah ii"};
    std::sort(trio.begin(), trio.end());
    do {
      std::vector<SubjectScore> ranked;
      for (std::size_t i = 0; i < trio.size(); ++i) ranked.push_back(subject(trio[i], 10 - i, 1));
      ranked.push_back(subject("oil prices", 1, 1));
      const auto kept = dedup_subjects(ranked);
      CHECK(kept.size() == 2);
      CHECK(kept.front().phrase == trio.front());
    } while (std::next_permutation(trio.begin(), trio.end()));
  }

  TEST_CASE("dedup is idempotent and respects the limit") {
    const auto b = build_index(testing::toy_corpus(8));
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::string q = testing::first_word(b, static_cast<DocNum>(rng() % b.doc_count()));
      const auto ranked = score_subjects(b, match_documents(b, SelectionState{q, std::nullopt, std::nullopt}));
      const auto once = dedup_subjects(ranked);
      CHECK(phrases(dedup_subjects(once)) == phrases(once));
      const auto limited = dedup_subjects(ranked, {}, 3);
      CHECK(limited.size() == std::min<std::size_t>(3, once.size()));
      for (std::size_t i = 0; i < limited.size(); ++i) CHECK(limited[i].phrase == once[i].phrase);
      for (std::size_t i = 0; i < once.size(); ++i) {
        for (std::size_t j = i + 1; j < once.size(); ++j) {
          CHECK(levenshtein_similarity(once[i].phrase, once[j].phrase) < 0.80);
          CHECK(token_jaccard(once[i].phrase, once[j].phrase) < 0.50);
        }
      }
    }
  }

  TEST_CASE("sparklines count documents per month") {
    std::vector<Document> docs;
    for (int i = 0; i < 5; ++i) {
      docs.push_back(doc("s" + std::to_string(i), i == 0 ? "1994-09-15" : "1995-0" + std::to_string(i) + "-01",
                         i == 0 ? "Haiti saw aid workers. More aid workers came. Aid workers stayed. Aid workers left. Aid workers returned."
                                : "Haiti voted."));
    }
    docs.push_back(doc("x", "1996-01-01", "Chile voted."));
    const auto b = build_index(std::move(docs));
    const auto q_docs = match_query(b, parse_query(b, "haiti"));
    const auto spark = subject_sparkline(b, "aid workers", q_docs);
    CHECK(spark.total() == 1);
    CHECK(spark.counts[b.month_bin(day("1994-09-01"))] == 1);
    CHECK(spark.counts.size() == static_cast<std::size_t>(b.month_count()));

    const auto chile = match_query(b, parse_query(b, "chile"));
    CHECK(subject_sparkline(b, "aid workers", chile).total() == 0);
    CHECK_THROWS_AS(subject_sparkline(b, "no such phrase", q_docs), NotFound);
  }
}
