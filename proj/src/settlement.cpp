#include "parkchain/settlement.hpp"

namespace parkchain::settlement {

void check_shares(const Shares& shares) {
  std::uint64_t total = std::uint64_t{shares.tax} + shares.service + shares.landlord;
  if (total > kBasisPointScale)
    throw Error(ErrorCode::kShareOverflow,
                "shares sum to " + std::to_string(total) + " bp");
}

Breakdown split(Funds locked, Funds claimed, const Shares& shares) {
  check_shares(shares);
  if (claimed > locked)
    throw Error(ErrorCode::kInvalidVoucher, "claim exceeds locked funds");
  Breakdown b;
  b.claimed = claimed;
  b.tax = apply_basis_points(claimed, shares.tax);
  b.service = apply_basis_points(claimed, shares.service);
  b.landlord = apply_basis_points(claimed, shares.landlord);
  b.operator_share = claimed - b.tax - b.service - b.landlord;
  b.refund = locked - claimed;
  return b;
}

nlohmann::json to_json(const Breakdown& b) {
  return {{"claimed", b.claimed.units}, {"tax", b.tax.units},
          {"service", b.service.units}, {"landlord", b.landlord.units},
          {"operator", b.operator_share.units}, {"refund", b.refund.units}};
}

}  // namespace parkchain::settlement
