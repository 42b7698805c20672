#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newslens/index.hpp"

namespace newslens {

/// Snippet parameters of the comparison search interface.
struct BaselineConfig {
  std::size_t surround = 50;  // characters of context on each side of a hit
  std::size_t top = 2;        // fragments per document

  void validate() const;
};

struct Fragment {
  std::string text;
  Span chars;                    // code points within the document text
  std::vector<Span> highlights;  // code points within `text`
  std::size_t distinct_terms = 0;
  std::size_t hits = 0;
};

struct Snippet {
  std::string doc_id;
  std::vector<Fragment> fragments;  // document order

  /// Fragments joined with "..." separators.
  std::string render() const;
};

/// Highlighted fragments around query-term hits. Throws InvalidArgument when
/// the document has no hit.
Snippet make_snippet(const IndexBundle& bundle, DocNum d, const QueryTerms& query,
                     const BaselineConfig& config = {});

struct RankedDocument {
  DocNum doc = 0;
  double score = 0.0;
};

/// Documents matching every Q term inside T, by descending sum of
/// tf * ln(1 + N / df); ties go to the more recent document, then by id.
std::vector<RankedDocument> rank_documents_baseline(const IndexBundle& bundle, std::string_view q,
                                                    const std::optional<DateRange>& timespan);

}  // namespace newslens
