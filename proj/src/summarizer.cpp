#include "newslens/summarizer.hpp"

#include <algorithm>
#include <map>

#include "newslens/random.hpp"

namespace newslens {

namespace {

bool contains_all(std::span<const StoredToken> tokens, const QueryTerms& query) {
  if (!query.resolvable()) return false;
  return std::all_of(query.ids.begin(), query.ids.end(), [&](TermId id) {
    return std::any_of(tokens.begin(), tokens.end(), [id](const StoredToken& t) { return t.term == id; });
  });
}

int tier_of(bool has_query, bool has_facet, bool facet_selected) {
  if (!facet_selected) return has_query ? 1 : 2;
  if (has_query && has_facet) return 0;
  return (has_query || has_facet) ? 1 : 2;
}

}  // namespace

std::vector<Highlight> find_highlights(const IndexBundle& bundle, DocNum d, Span tokens, const QueryTerms& query,
                                       const std::optional<FacetTerms>& facet, std::uint32_t base_char) {
  const auto& stored = bundle.doc(d).tokens;
  std::vector<Highlight> out;
  for (std::uint32_t i = tokens.begin; i < tokens.end; ++i) {
    const TermId term = stored[i].term;
    if (std::find(query.ids.begin(), query.ids.end(), term) != query.ids.end()) {
      out.push_back({{stored[i].char_begin - base_char, stored[i].char_end - base_char}, HighlightKind::Query});
    }
  }
  if (facet && facet->resolvable()) {
    const std::size_t n = facet->ids.size();
    for (std::uint32_t i = tokens.begin; i + n <= tokens.end; ++i) {
      bool match = true;
      for (std::size_t k = 0; k < n && match; ++k) match = stored[i + k].term == facet->ids[k];
      if (match) {
        out.push_back({{stored[i].char_begin - base_char, stored[i + n - 1].char_end - base_char},
                       HighlightKind::Facet});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Highlight& a, const Highlight& b) {
    if (a.chars.begin != b.chars.begin) return a.chars.begin < b.chars.begin;
    if (a.chars.end != b.chars.end) return a.chars.end < b.chars.end;
    return a.kind < b.kind;
  });
  return out;
}

SentenceCandidate select_document_sentence(const IndexBundle& bundle, DocNum d, const QueryTerms& query,
                                           const std::optional<FacetTerms>& facet) {
  const StoredDocument& doc = bundle.doc(d);
  const std::span<const StoredToken> tokens(doc.tokens);
  const Sentence* best = nullptr;
  int best_tier = 3;
  for (const auto& sentence : doc.sentences) {
    const auto slice = tokens.subspan(sentence.token_span.begin, sentence.token_span.size());
    const bool has_query = contains_all(slice, query);
    const bool has_facet = facet && facet->resolvable() && contains_sequence(slice, facet->ids);
    const int tier = tier_of(has_query, has_facet, facet.has_value());
    // Sentences are visited in index order, so strict < keeps the earliest.
    if (tier < best_tier) {
      best_tier = tier;
      best = &sentence;
      if (tier == 0) break;
    }
  }
  SentenceCandidate c;
  c.doc_id = doc.id;
  c.doc = d;
  c.date = doc.date;
  if (best == nullptr) return c;  // document without sentences
  c.sentence_index = best->index;
  c.tier = best_tier;
  const StoredToken& first = doc.tokens[best->token_span.begin];
  const StoredToken& last = doc.tokens[best->token_span.end - 1];
  c.text = doc.text.substr(first.byte_begin, last.byte_end - first.byte_begin);
  c.highlights = find_highlights(bundle, d, best->token_span, query, facet, first.char_begin);
  return c;
}

SentencePool build_sentence_pool(const IndexBundle& bundle, const DocumentSelection& selection,
                                 const QueryTerms& query, const std::optional<FacetTerms>& facet) {
  SentencePool pool;
  pool.selection = selection.state;
  pool.candidates.reserve(selection.docs.size());
  for (DocNum d : selection.docs) pool.candidates.push_back(select_document_sentence(bundle, d, query, facet));
  return pool;
}

SentencePool build_sentence_pool(const IndexBundle& bundle, const SelectionState& state) {
  const DocumentSelection selection = match_documents(bundle, state);
  return build_sentence_pool(bundle, selection, parse_query(bundle, state.query), parse_facet(bundle, state.facet));
}

std::vector<std::size_t> sample_order(const SentencePool& pool, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<std::size_t> order;
  order.reserve(pool.candidates.size());
  for (int tier = 0; tier <= 2; ++tier) {
    // Month buckets in ascending month order, candidates in pool order.
    std::map<int, std::vector<std::size_t>> by_month;
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
      if (pool.candidates[i].tier != tier) continue;
      by_month[YearMonth::of(pool.candidates[i].date).index()].push_back(i);
      ++remaining;
    }
    std::vector<std::vector<std::size_t>> bins;
    bins.reserve(by_month.size());
    for (auto& [month, members] : by_month) bins.push_back(std::move(members));

    while (remaining > 0) {
      std::uint64_t r = rng.below(remaining);
      std::size_t b = 0;
      while (r >= bins[b].size()) {
        r -= bins[b].size();
        ++b;
      }
      auto& bin = bins[b];
      const std::size_t j = static_cast<std::size_t>(rng.below(bin.size()));
      order.push_back(bin[j]);
      bin[j] = bin.back();
      bin.pop_back();
      --remaining;
    }
  }
  return order;
}

std::vector<SentenceCandidate> sample_summary(const SentencePool& pool, std::uint64_t seed) {
  std::vector<SentenceCandidate> out;
  out.reserve(pool.candidates.size());
  for (std::size_t i : sample_order(pool, seed)) out.push_back(pool.candidates[i]);
  return out;
}

Page<SentenceCandidate> paginate_summary(const std::vector<SentenceCandidate>& ordered, std::int64_t page,
                                         std::size_t page_size) {
  return paginate(ordered, page, page_size);
}

}  // namespace newslens
