#pragma once

#include <nlohmann/json.hpp>

#include "parkchain/types.hpp"

namespace parkchain::settlement {

struct Shares {
  BasisPoints tax = 0;
  BasisPoints service = 0;
  /// Zero when the payee is the lot itself.
  BasisPoints landlord = 0;
};

struct Breakdown {
  Funds claimed;
  Funds tax;
  Funds service;
  Funds landlord;
  Funds operator_share;
  Funds refund;

  friend bool operator==(const Breakdown&, const Breakdown&) = default;
};

/// Throws kShareOverflow when the shares add up to more than 10000.
void check_shares(const Shares& shares);

/// Each share is floored on the gross claimed amount; the operator takes the
/// remainder and the payer gets back whatever was not claimed.
Breakdown split(Funds locked, Funds claimed, const Shares& shares);

nlohmann::json to_json(const Breakdown& breakdown);

}  // namespace parkchain::settlement
