#include "newslens/timeseries.hpp"

#include <numeric>

#include "newslens/error.hpp"

namespace newslens {

std::vector<TimeSeries::Bin> TimeSeries::bins() const {
  std::vector<Bin> out;
  out.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.push_back({YearMonth::from_index(first.index() + static_cast<int>(i)), counts[i]});
  }
  return out;
}

std::uint64_t TimeSeries::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t TimeSeries::sum_over(const DateRange& range) const {
  const int lo = std::max(0, YearMonth::of(range.start).index() - first.index());
  const int hi = std::min(static_cast<int>(counts.size()) - 1, YearMonth::of(range.end).index() - first.index());
  std::uint64_t sum = 0;
  for (int i = lo; i <= hi; ++i) sum += counts[static_cast<std::size_t>(i)];
  return sum;
}

TimeSeries empty_series(const IndexBundle& bundle) {
  return TimeSeries{bundle.first_month(), std::vector<std::uint32_t>(static_cast<std::size_t>(bundle.month_count()), 0)};
}

TimeSeries series_of(const IndexBundle& bundle, std::span<const DocNum> docs) {
  TimeSeries series = empty_series(bundle);
  for (DocNum d : docs) ++series.counts[static_cast<std::size_t>(bundle.month_bin(d))];
  return series;
}

TimeSeries count_by_month(const IndexBundle& bundle, const SelectionState& state) {
  return series_of(bundle, match_query(bundle, parse_query(bundle, state.query)));
}

TimeSeries count_by_month_qf(const IndexBundle& bundle, const SelectionState& state) {
  const QueryTerms query = parse_query(bundle, state.query);
  const auto facet = parse_facet(bundle, state.facet);
  if (!facet) throw InvalidArgument("the Q and F series needs a non-empty F");
  std::vector<DocNum> docs;
  for (DocNum d : match_query(bundle, query)) {
    if (contains_facet(bundle, d, *facet)) docs.push_back(d);
  }
  return series_of(bundle, docs);
}

}  // namespace newslens
