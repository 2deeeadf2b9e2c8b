#include "parkchain/pricing.hpp"

#include <algorithm>

#include "parkchain/ledger.hpp"

namespace parkchain::pricing {
namespace {

constexpr Duration kSecondsPerWeek = kHoursPerWeek * kSecondsPerHour;

std::size_t slot_of(TimePoint t) {
  return static_cast<std::size_t>((t / kSecondsPerHour) % kHoursPerWeek);
}

}  // namespace

WeekHourPolicy::WeekHourPolicy(const Grid& rates) : rates_(rates) {
  for (auto r : rates_) week_rate_sum_ += r;
}

WeekHourPolicy WeekHourPolicy::uniform(std::uint64_t rate) {
  Grid grid;
  grid.fill(rate);
  return WeekHourPolicy(grid);
}

WeekHourPolicy WeekHourPolicy::from_json(const nlohmann::json& grid) {
  if (!grid.is_array() || grid.size() != kHoursPerWeek)
    throw Error(ErrorCode::kInvalidTerms,
                "policy grid must be an array of 168 integers");
  Grid rates{};
  for (std::size_t i = 0; i < kHoursPerWeek; ++i) {
    const auto& r = grid[i];
    if (!is_non_negative_integer(r))
      throw Error(ErrorCode::kInvalidTerms,
                  "policy rate " + std::to_string(i) +
                      " is not a non-negative integer");
    rates[i] = r.get<std::uint64_t>();
  }
  return WeekHourPolicy(rates);
}

std::uint64_t WeekHourPolicy::rate_at(TimePoint t) const {
  return rates_[slot_of(t)];
}

Funds WeekHourPolicy::total_price(TimePoint start, TimePoint end) const {
  if (start > end)
    throw Error(ErrorCode::kInvalidInterval, "start is after end");

  // Accumulated in rate*seconds; whole weeks collapse to one product.
  unsigned __int128 rate_seconds = 0;
  Duration span = end - start;
  Duration weeks = span / kSecondsPerWeek;
  rate_seconds += week_rate_sum_ * kSecondsPerHour * weeks;

  TimePoint t = start + weeks * kSecondsPerWeek;
  while (t < end) {
    TimePoint slot_end = (t / kSecondsPerHour + 1) * kSecondsPerHour;
    TimePoint stop = std::min(end, slot_end);
    rate_seconds += static_cast<unsigned __int128>(stop - t) * rate_at(t);
    t = stop;
  }

  unsigned __int128 price = (rate_seconds + kSecondsPerHour - 1) / kSecondsPerHour;
  if (price > UINT64_MAX)
    throw Error(ErrorCode::kOverflow, "price exceeds 64 bits");
  return Funds{static_cast<std::uint64_t>(price)};
}

nlohmann::json WeekHourPolicy::to_json() const {
  return nlohmann::json(rates_);
}

}  // namespace parkchain::pricing
