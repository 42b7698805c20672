#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newslens/corpus.hpp"
#include "newslens/date.hpp"

namespace newslens {

using DocNum = std::uint32_t;
using TermId = std::uint32_t;
using PhraseId = std::uint32_t;

inline constexpr TermId kUnknownTerm = std::numeric_limits<TermId>::max();
/// Phrases seen fewer times than this across the corpus are not indexed.
inline constexpr std::uint32_t kMinPhraseCount = 5;
inline constexpr int kIndexFormatVersion = 1;

struct Posting {
  DocNum doc = 0;
  std::uint32_t count = 0;
  bool operator==(const Posting&) const = default;
};

struct PhraseCount {
  PhraseId phrase = 0;
  std::uint32_t count = 0;
  bool operator==(const PhraseCount&) const = default;
};

/// Compact token record kept in the document store.
struct StoredToken {
  TermId term = kUnknownTerm;
  std::uint32_t byte_begin = 0;
  std::uint32_t byte_end = 0;
  std::uint32_t char_begin = 0;
  std::uint32_t char_end = 0;
  Pos pos = Pos::Other;
};

struct StoredDocument {
  std::string id;
  Date date;
  std::string title;
  std::string text;
  std::vector<StoredToken> tokens;
  std::vector<Sentence> sentences;
  std::vector<PhraseCount> phrases;  // ascending phrase id
};

struct PhraseEntry {
  std::string text;
  std::vector<TermId> terms;
  std::vector<Posting> postings;  // ascending doc
  std::uint32_t df = 0;
  std::uint64_t total = 0;
};

/// Immutable index over a dated corpus. Documents are numbered in
/// ascending (date, id) order, so DocNum order is selection order.
class IndexBundle {
 public:
  std::size_t doc_count() const { return docs_.size(); }
  const StoredDocument& doc(DocNum d) const { return docs_[d]; }
  std::optional<DocNum> find_doc(std::string_view id) const;
  /// Rebuilds a full Document (tokens, sentences, tags) from the store.
  Document document(DocNum d) const;

  std::size_t term_count() const { return terms_.size(); }
  const std::string& term(TermId t) const { return terms_[t]; }
  std::optional<TermId> find_term(std::string_view normalized) const;
  /// Postings of a term; empty for punctuation-only terms.
  std::span<const Posting> term_postings(TermId t) const { return term_postings_[t]; }

  std::size_t phrase_count() const { return phrases_.size(); }
  const PhraseEntry& phrase(PhraseId p) const { return phrases_[p]; }
  std::optional<PhraseId> find_phrase(std::string_view normalized) const;

  DateRange corpus_span() const { return span_; }
  YearMonth first_month() const { return YearMonth::of(span_.start); }
  int month_count() const { return span_.month_count(); }
  int month_bin(DocNum d) const { return YearMonth::of(docs_[d].date).index() - first_month().index(); }
  int month_bin(const Date& date) const { return YearMonth::of(date).index() - first_month().index(); }
  /// DocNums whose date lies in `range`, as a contiguous interval.
  Span docs_in(const DateRange& range) const;

 private:
  friend IndexBundle build_index(std::vector<Document> docs);
  friend IndexBundle load_index(const std::filesystem::path& dir);
  friend void save_index(const IndexBundle& bundle, const std::filesystem::path& dir);

  void rebuild_lookups();

  std::vector<StoredDocument> docs_;
  std::vector<std::string> terms_;
  std::vector<std::vector<Posting>> term_postings_;
  std::vector<PhraseEntry> phrases_;
  DateRange span_;

  std::unordered_map<std::string, DocNum> doc_lookup_;
  std::unordered_map<std::string, TermId> term_lookup_;
  std::unordered_map<std::string, PhraseId> phrase_lookup_;
};

/// The (Q, F, T) triple driving every view.
struct SelectionState {
  std::string query;
  std::optional<std::string> facet;       // F; nullopt when no subject is selected
  std::optional<DateRange> timespan;      // T; nullopt means the whole corpus
};

/// Normalized query terms resolved against the vocabulary. Unknown terms map
/// to kUnknownTerm and match nothing.
struct QueryTerms {
  std::vector<std::string> normalized;
  std::vector<TermId> ids;

  bool resolvable() const;
  std::string joined() const;
};

/// Normalized facet token sequence; matched contiguously.
struct FacetTerms {
  std::vector<std::string> normalized;
  std::vector<TermId> ids;

  bool resolvable() const;
  std::string joined() const;
};

/// Throws InvalidArgument("empty query") when `q` has no non-punctuation token.
QueryTerms parse_query(const IndexBundle& bundle, std::string_view q);
/// nullopt when `f` is absent or normalizes to nothing.
std::optional<FacetTerms> parse_facet(const IndexBundle& bundle, const std::optional<std::string>& f);

/// T clipped to the corpus span. Throws InvalidArgument when start > end.
/// nullopt when T lies entirely outside the corpus.
std::optional<DateRange> resolve_timespan(const IndexBundle& bundle, const SelectionState& state);

struct DocumentSelection {
  SelectionState state;
  std::optional<DateRange> timespan;  // resolved T
  std::vector<DocNum> docs;           // ascending (date, id)

  std::size_t size() const { return docs.size(); }
  std::vector<std::string> doc_ids(const IndexBundle& bundle) const;
};

IndexBundle build_index(std::vector<Document> docs);

/// Documents containing every query term, over the whole corpus.
std::vector<DocNum> match_query(const IndexBundle& bundle, const QueryTerms& query);
bool contains_sequence(std::span<const StoredToken> tokens, std::span<const TermId> sequence);
bool contains_facet(const IndexBundle& bundle, DocNum d, const FacetTerms& facet);

DocumentSelection match_documents(const IndexBundle& bundle, const SelectionState& state);

void save_index(const IndexBundle& bundle, const std::filesystem::path& dir);
IndexBundle load_index(const std::filesystem::path& dir);

}  // namespace newslens
