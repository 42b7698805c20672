#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newslens/index.hpp"
#include "newslens/timeseries.hpp"

namespace newslens {

struct DedupConfig {
  double levenshtein_sim = 0.80;
  double jaccard = 0.50;
};

/// A ranked subject. score = qf / df.
struct SubjectScore {
  std::string phrase;
  PhraseId id = 0;
  std::uint64_t qf = 0;  // occurrences inside the (Q, T) selection
  std::uint32_t df = 0;  // corpus document frequency
  TimeSeries sparkline;  // filled only for displayed subjects

  double score() const { return static_cast<double>(qf) / static_cast<double>(df); }
};

/// Ranking order: score descending, then qf descending, then more tokens
/// first (the more specific variant), then phrase.
bool ranks_before(const SubjectScore& a, const SubjectScore& b);

/// Scores every indexed phrase occurring in `docs`.
std::vector<SubjectScore> score_subjects(const IndexBundle& bundle, std::span<const DocNum> docs);
/// Same, for a (Q, null, T) selection. Throws InvalidArgument if F is set.
std::vector<SubjectScore> score_subjects(const IndexBundle& bundle, const DocumentSelection& selection);

std::size_t levenshtein_distance(std::string_view a, std::string_view b);
/// 1 - distance / max length, over code points. Two empty strings give 1.
double levenshtein_similarity(std::string_view a, std::string_view b);
double token_jaccard(std::string_view a, std::string_view b);

/// Greedy duplicate suppression in rank order. A candidate is dropped when,
/// against a kept subject, edit similarity or token Jaccard reaches its
/// threshold, one token set contains the other, or the two overlap
/// ("king abdullah" / "abdullah ii") and their overlap-merge ("king abdullah
/// ii") is itself in `ranked`. Stops after `limit` subjects are kept.
std::vector<SubjectScore> dedup_subjects(const std::vector<SubjectScore>& ranked, const DedupConfig& config = {},
                                         std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Monthly counts of `q_docs` (ascending) containing `phrase`, over the
/// corpus span. Throws NotFound for a phrase missing from the index.
TimeSeries subject_sparkline(const IndexBundle& bundle, std::string_view phrase, std::span<const DocNum> q_docs);

}  // namespace newslens
