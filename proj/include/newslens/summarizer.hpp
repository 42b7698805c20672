#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newslens/index.hpp"

namespace newslens {

enum class HighlightKind : std::uint8_t { Query, Facet };

/// Character range (code points) labelled as a Q-term or F match.
struct Highlight {
  Span chars;
  HighlightKind kind = HighlightKind::Query;
  bool operator==(const Highlight&) const = default;
};

/// Q-term tokens and contiguous F matches inside `tokens` (a document token
/// range). Offsets are relative to `base_char`.
std::vector<Highlight> find_highlights(const IndexBundle& bundle, DocNum d, Span tokens, const QueryTerms& query,
                                       const std::optional<FacetTerms>& facet, std::uint32_t base_char);

struct SentenceCandidate {
  std::string doc_id;
  DocNum doc = 0;
  std::uint32_t sentence_index = 0;
  /// 0: contains Q and F; 1: exactly one of them; 2: neither.
  /// Without F: 1 when the sentence contains Q, otherwise 2.
  int tier = 2;
  Date date;
  std::string text;
  std::vector<Highlight> highlights;  // relative to the sentence text
};

/// One candidate sentence per selected document.
struct SentencePool {
  SelectionState selection;
  std::vector<SentenceCandidate> candidates;
};

/// The sentence minimizing (tier, sentence index). A sentence contains Q when
/// every query term occurs in it, and F when F occurs contiguously.
SentenceCandidate select_document_sentence(const IndexBundle& bundle, DocNum d, const QueryTerms& query,
                                           const std::optional<FacetTerms>& facet);

SentencePool build_sentence_pool(const IndexBundle& bundle, const SelectionState& state);
SentencePool build_sentence_pool(const IndexBundle& bundle, const DocumentSelection& selection,
                                 const QueryTerms& query, const std::optional<FacetTerms>& facet);

/// Total order over the pool as positions into pool.candidates: tiers in
/// ascending order; inside a tier, repeated draws without replacement where
/// a month is chosen in proportion to its remaining candidates, then a
/// candidate uniformly within it. Deterministic in (pool, seed).
std::vector<std::size_t> sample_order(const SentencePool& pool, std::uint64_t seed);
std::vector<SentenceCandidate> sample_summary(const SentencePool& pool, std::uint64_t seed);

template <typename T>
struct Page {
  std::vector<T> items;
  std::size_t total = 0;
  std::size_t page = 0;
  std::size_t page_size = 0;
};

inline constexpr std::size_t kDefaultPageSize = 10;

/// Slice `page` of `ordered`; pages past the end are empty. Throws
/// InvalidArgument for a negative page or zero page size.
template <typename T>
Page<T> paginate(const std::vector<T>& ordered, std::int64_t page, std::size_t page_size = kDefaultPageSize);

Page<SentenceCandidate> paginate_summary(const std::vector<SentenceCandidate>& ordered, std::int64_t page,
                                         std::size_t page_size = kDefaultPageSize);

}  // namespace newslens

#include "newslens/error.hpp"

namespace newslens {

template <typename T>
Page<T> paginate(const std::vector<T>& ordered, std::int64_t page, std::size_t page_size) {
  if (page < 0) throw InvalidArgument("page must be non-negative");
  if (page_size == 0) throw InvalidArgument("page size must be positive");
  Page<T> out;
  out.total = ordered.size();
  out.page = static_cast<std::size_t>(page);
  out.page_size = page_size;
  const std::size_t begin = out.page * page_size;
  if (begin < ordered.size() && begin / page_size == out.page) {
    const std::size_t end = std::min(ordered.size(), begin + page_size);
    out.items.assign(ordered.begin() + static_cast<std::ptrdiff_t>(begin),
                     ordered.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

}  // namespace newslens
