#include "newslens/facets.hpp"

#include <algorithm>
#include <unordered_set>

#include "newslens/error.hpp"
#include "newslens/text.hpp"

namespace newslens {

namespace {

std::vector<std::string_view> split_tokens(std::string_view phrase) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < phrase.size()) {
    const std::size_t j = std::min(phrase.find(' ', i), phrase.size());
    if (j > i) out.push_back(phrase.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

std::vector<std::string_view> sorted_unique(std::vector<std::string_view> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Candidate {
  std::string_view phrase;
  std::vector<std::string_view> tokens;  // in order
  std::vector<std::string_view> set;     // sorted, unique
  std::size_t length = 0;                // code points
};

Candidate make_candidate(std::string_view phrase) {
  Candidate c{phrase, split_tokens(phrase), {}, text::count_code_points(phrase)};
  c.set = sorted_unique(c.tokens);
  return c;
}

std::size_t intersection_size(const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// `left` ends with a token run that `right` starts with, and the merged
// sequence is a known phrase.
bool merges_into_known(const Candidate& left, const Candidate& right,
                       const std::unordered_set<std::string_view>& known) {
  const std::size_t max_overlap = std::min(left.tokens.size(), right.tokens.size());
  for (std::size_t k = 1; k <= max_overlap; ++k) {
    if (!std::equal(left.tokens.end() - static_cast<std::ptrdiff_t>(k), left.tokens.end(), right.tokens.begin())) {
      continue;
    }
    std::string merged(left.phrase);
    for (std::size_t i = k; i < right.tokens.size(); ++i) {
      merged.push_back(' ');
      merged.append(right.tokens[i]);
    }
    if (known.contains(merged)) return true;
  }
  return false;
}

bool duplicates(const Candidate& kept, const Candidate& cand, const DedupConfig& config,
                const std::unordered_set<std::string_view>& known) {
  const std::size_t common = intersection_size(kept.set, cand.set);
  if (common == kept.set.size() || common == cand.set.size()) return true;  // containment
  const std::size_t unite = kept.set.size() + cand.set.size() - common;
  if (unite > 0 && static_cast<double>(common) / static_cast<double>(unite) >= config.jaccard) return true;
  if (common > 0 && (merges_into_known(kept, cand, known) || merges_into_known(cand, kept, known))) return true;
  // Length difference alone bounds the edit similarity.
  const std::size_t longer = std::max(kept.length, cand.length);
  const std::size_t diff = longer - std::min(kept.length, cand.length);
  if (longer > 0 && 1.0 - static_cast<double>(diff) / static_cast<double>(longer) < config.levenshtein_sim) {
    return false;
  }
  return levenshtein_similarity(kept.phrase, cand.phrase) >= config.levenshtein_sim;
}

}  // namespace

bool ranks_before(const SubjectScore& a, const SubjectScore& b) {
  const auto lhs = static_cast<unsigned __int128>(a.qf) * b.df;
  const auto rhs = static_cast<unsigned __int128>(b.qf) * a.df;
  if (lhs != rhs) return lhs > rhs;
  if (a.qf != b.qf) return a.qf > b.qf;
  const auto na = std::count(a.phrase.begin(), a.phrase.end(), ' ');
  const auto nb = std::count(b.phrase.begin(), b.phrase.end(), ' ');
  if (na != nb) return na > nb;
  return a.phrase < b.phrase;
}

std::vector<SubjectScore> score_subjects(const IndexBundle& bundle, std::span<const DocNum> docs) {
  std::vector<std::uint64_t> qf(bundle.phrase_count(), 0);
  std::vector<PhraseId> touched;
  for (DocNum d : docs) {
    for (const auto& pc : bundle.doc(d).phrases) {
      if (qf[pc.phrase] == 0) touched.push_back(pc.phrase);
      qf[pc.phrase] += pc.count;
    }
  }
  std::vector<SubjectScore> out;
  out.reserve(touched.size());
  for (PhraseId p : touched) {
    const PhraseEntry& entry = bundle.phrase(p);
    out.push_back(SubjectScore{entry.text, p, qf[p], entry.df, {}});
  }
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::vector<SubjectScore> score_subjects(const IndexBundle& bundle, const DocumentSelection& selection) {
  if (selection.state.facet) {
    throw InvalidArgument("subjects are scored over a (Q, T) selection; F must be null");
  }
  return score_subjects(bundle, selection.docs);
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  const auto ca = text::decode_utf8(a);
  const auto cb = text::decode_utf8(b);
  std::vector<std::size_t> row(cb.size() + 1);
  for (std::size_t j = 0; j <= cb.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= ca.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= cb.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (ca[i - 1].value == cb[j - 1].value ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[cb.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::size_t longer = std::max(text::count_code_points(a), text::count_code_points(b));
  if (longer == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(longer);
}

double token_jaccard(std::string_view a, std::string_view b) {
  const auto sa = sorted_unique(split_tokens(a));
  const auto sb = sorted_unique(split_tokens(b));
  const std::size_t common = intersection_size(sa, sb);
  const std::size_t unite = sa.size() + sb.size() - common;
  return unite == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(unite);
}

std::vector<SubjectScore> dedup_subjects(const std::vector<SubjectScore>& ranked, const DedupConfig& config,
                                         std::size_t limit) {
  std::unordered_set<std::string_view> known;
  known.reserve(ranked.size());
  for (const auto& s : ranked) known.insert(s.phrase);

  std::vector<SubjectScore> out;
  std::vector<Candidate> kept;
  for (const auto& subject : ranked) {
    if (out.size() >= limit) break;
    Candidate cand = make_candidate(subject.phrase);
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Candidate& k) {
      return duplicates(k, cand, config, known);
    });
    if (suppressed) continue;
    out.push_back(subject);
    kept.push_back(std::move(cand));
  }
  return out;
}

TimeSeries subject_sparkline(const IndexBundle& bundle, std::string_view phrase, std::span<const DocNum> q_docs) {
  const auto id = bundle.find_phrase(phrase);
  if (!id) throw NotFound("unknown phrase '" + std::string(phrase) + "'");
  TimeSeries series = empty_series(bundle);
  const auto& postings = bundle.phrase(*id).postings;
  // Merge-walk two ascending lists.
  auto q = q_docs.begin();
  for (const auto& posting : postings) {
    q = std::lower_bound(q, q_docs.end(), posting.doc);
    if (q == q_docs.end()) break;
    if (*q == posting.doc) ++series.counts[static_cast<std::size_t>(bundle.month_bin(posting.doc))];
  }
  return series;
}

}  // namespace newslens
