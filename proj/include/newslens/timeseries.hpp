#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "newslens/date.hpp"
#include "newslens/index.hpp"

namespace newslens {

/// Monthly document counts, gap-free over the corpus span.
struct TimeSeries {
  struct Bin {
    YearMonth month;
    std::uint32_t count = 0;
  };

  YearMonth first;
  std::vector<std::uint32_t> counts;

  std::vector<Bin> bins() const;
  std::uint64_t total() const;
  /// Sum over the months touched by `range`.
  std::uint64_t sum_over(const DateRange& range) const;
  bool operator==(const TimeSeries&) const = default;
};

/// Zero-filled series covering the bundle's corpus span.
TimeSeries empty_series(const IndexBundle& bundle);
TimeSeries series_of(const IndexBundle& bundle, std::span<const DocNum> docs);

/// Documents matching Q per month over the whole corpus; F and T are ignored.
TimeSeries count_by_month(const IndexBundle& bundle, const SelectionState& state);
/// Documents matching Q and containing F per month. Requires F.
TimeSeries count_by_month_qf(const IndexBundle& bundle, const SelectionState& state);

}  // namespace newslens
