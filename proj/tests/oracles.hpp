#pragma once

// Reference computations used as test oracles. Each one takes a different
// arithmetic route from the production code it checks.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "parkchain/pricing.hpp"
#include "parkchain/settlement.hpp"

namespace oracle {

using u128 = unsigned __int128;

/// Sums the grid rate of every single second in [start, end) and applies one
/// ceiling at the end.
inline std::uint64_t per_second_price(const parkchain::pricing::WeekHourPolicy::Grid& grid,
                                      std::uint64_t start, std::uint64_t end) {
  u128 rate_seconds = 0;
  for (std::uint64_t s = start; s < end; ++s) rate_seconds += grid[(s / 3600) % 168];
  return static_cast<std::uint64_t>((rate_seconds + 3599) / 3600);
}

/// floor(amount * bp / 10000) through quotient/remainder decomposition.
inline std::uint64_t floor_share(std::uint64_t amount, std::uint64_t bp) {
  std::uint64_t q = amount / 10000;
  std::uint64_t r = amount % 10000;
  return q * bp + (r * bp) / 10000;
}

struct Split {
  std::uint64_t tax, service, landlord, operator_share, refund;
};

inline Split settlement(std::uint64_t locked, std::uint64_t claimed, std::uint64_t tax_bp,
                        std::uint64_t sp_bp, std::uint64_t landlord_bp) {
  Split s{};
  s.tax = floor_share(claimed, tax_bp);
  s.service = floor_share(claimed, sp_bp);
  s.landlord = floor_share(claimed, landlord_bp);
  s.operator_share = claimed - s.tax - s.service - s.landlord;
  s.refund = locked - claimed;
  return s;
}

/// Counts whole late periods by stepping one period at a time.
inline std::uint64_t late_periods(std::uint64_t next_due, std::uint64_t period,
                                  std::uint64_t now) {
  std::uint64_t k = 0;
  while (now >= next_due + (k + 1) * period) ++k;
  return k;
}

inline std::uint64_t rent_charge(std::uint64_t fee, std::uint64_t rate, std::uint64_t k) {
  u128 penalty = static_cast<u128>(fee) * rate * k / 10000;
  return fee + static_cast<std::uint64_t>(penalty);
}

/// Replays a JSONL event log: every fund-moving event carries its transfers,
/// so holder balances can be rebuilt from genesis alone.
struct LogFold {
  std::map<std::string, std::int64_t> holders;  // address hex or escrow:<id>
  std::uint64_t tax = 0, service = 0, landlord = 0, operator_share = 0;
  std::uint64_t settlement_refunds = 0, timeout_refunds = 0;
  std::uint64_t rents = 0, penalties = 0;
  std::uint64_t violations = 0, mismatches = 0;
  std::map<std::string, int> fund_events_per_channel;
  std::vector<nlohmann::json> events;
};

inline LogFold fold_events(const std::string& jsonl,
                           const std::map<std::string, std::int64_t>& genesis) {
  LogFold fold;
  fold.holders = genesis;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    auto nl = jsonl.find('\n', pos);
    auto line = jsonl.substr(pos, nl - pos);
    pos = nl == std::string::npos ? jsonl.size() : nl + 1;
    if (line.empty()) continue;
    auto event = nlohmann::json::parse(line);
    const auto& kind = event["kind"].get_ref<const std::string&>();
    const auto& payload = event["payload"];
    if (payload.contains("transfers")) {
      for (const auto& t : payload["transfers"]) {
        auto amount = t["amount"].get<std::int64_t>();
        fold.holders[t["from"].get<std::string>()] -= amount;
        fold.holders[t["to"].get<std::string>()] += amount;
      }
      if (payload.contains("channel"))
        ++fold.fund_events_per_channel[payload["channel"].get<std::string>()];
    }
    if (kind == "CHANNEL_SETTLE") {
      const auto& b = payload["breakdown"];
      fold.tax += b["tax"].get<std::uint64_t>();
      fold.service += b["service"].get<std::uint64_t>();
      fold.landlord += b["landlord"].get<std::uint64_t>();
      fold.operator_share += b["operator"].get<std::uint64_t>();
      fold.settlement_refunds += b["refund"].get<std::uint64_t>();
    } else if (kind == "CHANNEL_REFUND") {
      fold.timeout_refunds += payload["refund"].get<std::uint64_t>();
    } else if (kind == "RENT_PAYMENT") {
      fold.rents += payload["rent"].get<std::uint64_t>();
      fold.penalties += payload["penalty"].get<std::uint64_t>();
    } else if (kind == "OCCUPANCY_VIOLATION") {
      ++fold.violations;
    } else if (kind == "OCCUPANCY_MISMATCH") {
      ++fold.mismatches;
    }
    fold.events.push_back(std::move(event));
  }
  return fold;
}

}  // namespace oracle
