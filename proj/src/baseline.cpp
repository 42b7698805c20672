#include "newslens/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "newslens/error.hpp"
#include "newslens/text.hpp"

namespace newslens {

void BaselineConfig::validate() const {
  if (surround < 1) throw InvalidArgument("baseline surround must be at least 1");
  if (top < 1) throw InvalidArgument("baseline top must be at least 1");
}

std::string Snippet::render() const {
  std::string out;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    if (i > 0) out += "...";
    out += fragments[i].text;
  }
  return out;
}

namespace {

struct Hit {
  Span chars;
  TermId term;
};

struct Window {
  std::uint32_t begin;
  std::uint32_t end;
  std::vector<Hit> hits;
};

}  // namespace

Snippet make_snippet(const IndexBundle& bundle, DocNum d, const QueryTerms& query, const BaselineConfig& config) {
  config.validate();
  const StoredDocument& doc = bundle.doc(d);
  std::vector<Hit> hits;
  for (const auto& t : doc.tokens) {
    if (std::find(query.ids.begin(), query.ids.end(), t.term) != query.ids.end()) {
      hits.push_back({{t.char_begin, t.char_end}, t.term});
    }
  }
  if (hits.empty()) throw InvalidArgument("document '" + doc.id + "' contains no query term");

  const auto cps = text::decode_utf8(doc.text);
  const auto n = static_cast<std::uint32_t>(cps.size());
  const auto space = [&](std::uint32_t i) { return text::is_space(cps[i].value); };
  const auto surround = static_cast<std::uint32_t>(std::min<std::size_t>(config.surround, n));

  std::vector<Window> windows;
  for (const auto& hit : hits) {
    std::uint32_t begin = hit.chars.begin > surround ? hit.chars.begin - surround : 0;
    std::uint32_t end = std::min(n, hit.chars.end + surround);
    // Snap outward to word boundaries; a window edge on whitespace is trimmed instead.
    if (space(begin)) {
      while (begin < hit.chars.begin && space(begin)) ++begin;
    } else {
      while (begin > 0 && !space(begin - 1)) --begin;
    }
    if (space(end - 1)) {
      while (end > hit.chars.end && space(end - 1)) --end;
    } else {
      while (end < n && !space(end)) ++end;
    }
    if (!windows.empty() && begin <= windows.back().end) {
      windows.back().end = std::max(windows.back().end, end);
      windows.back().hits.push_back(hit);
    } else {
      windows.push_back({begin, end, {hit}});
    }
  }

  std::vector<Fragment> fragments;
  for (const auto& w : windows) {
    Fragment f;
    f.chars = {w.begin, w.end};
    const std::uint32_t byte_begin = cps[w.begin].byte_offset;
    const std::uint32_t byte_end = w.end < n ? cps[w.end].byte_offset : static_cast<std::uint32_t>(doc.text.size());
    f.text = doc.text.substr(byte_begin, byte_end - byte_begin);
    std::vector<TermId> seen;
    for (const auto& hit : w.hits) {
      f.highlights.push_back({hit.chars.begin - w.begin, hit.chars.end - w.begin});
      if (std::find(seen.begin(), seen.end(), hit.term) == seen.end()) seen.push_back(hit.term);
    }
    f.distinct_terms = seen.size();
    f.hits = w.hits.size();
    fragments.push_back(std::move(f));
  }
  std::stable_sort(fragments.begin(), fragments.end(), [](const Fragment& a, const Fragment& b) {
    if (a.distinct_terms != b.distinct_terms) return a.distinct_terms > b.distinct_terms;
    return a.hits > b.hits;
  });
  if (fragments.size() > config.top) fragments.resize(config.top);
  std::sort(fragments.begin(), fragments.end(),
            [](const Fragment& a, const Fragment& b) { return a.chars.begin < b.chars.begin; });
  return Snippet{doc.id, std::move(fragments)};
}

std::vector<RankedDocument> rank_documents_baseline(const IndexBundle& bundle, std::string_view q,
                                                    const std::optional<DateRange>& timespan) {
  SelectionState state{std::string(q), std::nullopt, timespan};
  const QueryTerms query = parse_query(bundle, q);
  const DocumentSelection selection = match_documents(bundle, state);
  const double n_docs = static_cast<double>(bundle.doc_count());

  std::vector<RankedDocument> out;
  if (selection.docs.empty()) return out;
  out.reserve(selection.docs.size());
  for (DocNum d : selection.docs) out.push_back({d, 0.0});
  for (TermId term : query.ids) {
    const auto postings = bundle.term_postings(term);
    const double idf = std::log(1.0 + n_docs / static_cast<double>(postings.size()));
    auto it = postings.begin();
    for (auto& ranked : out) {
      it = std::lower_bound(it, postings.end(), ranked.doc, [](const Posting& p, DocNum v) { return p.doc < v; });
      ranked.score += static_cast<double>(it->count) * idf;
    }
  }
  std::sort(out.begin(), out.end(), [&](const RankedDocument& a, const RankedDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto& da = bundle.doc(a.doc);
    const auto& db = bundle.doc(b.doc);
    if (da.date != db.date) return da.date > db.date;
    return da.id < db.id;
  });
  return out;
}

}  // namespace newslens
