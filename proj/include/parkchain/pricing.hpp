#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include <nlohmann/json.hpp>

#include "parkchain/types.hpp"

namespace parkchain::pricing {

inline constexpr std::size_t kHoursPerWeek = 168;

/// Pricing protocol every parking provider plugs in.
class PaymentPolicy {
 public:
  virtual ~PaymentPolicy() = default;

  /// Minor units per hour in effect at `t`.
  virtual std::uint64_t rate_at(TimePoint t) const = 0;

  /// Exact price for parking over [start, end). Throws kInvalidInterval when
  /// start > end.
  virtual Funds total_price(TimePoint start, TimePoint end) const = 0;

  virtual nlohmann::json to_json() const = 0;
};

using PolicyPtr = std::shared_ptr<const PaymentPolicy>;

/// Hour-of-week tariff. Slot 0 is Monday 00:00-01:00; the simulated epoch is a
/// Monday midnight so slot = (t / 3600) mod 168.
class WeekHourPolicy final : public PaymentPolicy {
 public:
  using Grid = std::array<std::uint64_t, kHoursPerWeek>;

  explicit WeekHourPolicy(const Grid& rates);
  static WeekHourPolicy uniform(std::uint64_t rate);

  /// Accepts a 168-element array of non-negative integers.
  static WeekHourPolicy from_json(const nlohmann::json& grid);

  std::uint64_t rate_at(TimePoint t) const override;

  /// ceil(sum over hour slots of seconds_in_slot * rate / 3600), rounded
  /// once at the end.
  Funds total_price(TimePoint start, TimePoint end) const override;

  nlohmann::json to_json() const override;

  const Grid& rates() const { return rates_; }

 private:
  Grid rates_;
  unsigned __int128 week_rate_sum_ = 0;
};

}  // namespace parkchain::pricing
