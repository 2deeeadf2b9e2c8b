#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parkchain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Hash32 = std::array<std::uint8_t, 32>;

/// Simulated seconds since the Monday 00:00 epoch.
using TimePoint = std::uint64_t;
using Duration = std::uint64_t;

/// Rates and shares are expressed in 1/10000 units.
using BasisPoints = std::uint32_t;
inline constexpr BasisPoints kBasisPointScale = 10000;

inline constexpr Duration kSecondsPerHour = 3600;
inline constexpr Duration kDefaultGrace = 86400;

enum class ErrorCode {
  kDuplicateSeed,
  kMintAfterGenesis,
  kUnknownAddress,
  kInsufficientFunds,
  kOverflow,
  kUnauthorized,
  kInvalidTerms,
  kDuplicateRequest,
  kNotPending,
  kDuplicatePlate,
  kEmptyPlate,
  kNotFound,
  kInactiveContract,
  kNotProposed,
  kUnknownStall,
  kOverlap,
  kStale,
  kTerminated,
  kShareOverflow,
  kCarAlreadyParked,
  kStallBusy,
  kForeignStall,
  kInsufficientDeposit,
  kInvalidInterval,
  kChannelClosed,
  kInvalidVoucher,
  kTooEarly,
  kActiveSessions,
};

std::string_view to_string(ErrorCode code);

/// Every engine rejection carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Non-negative amount of minor currency units. Arithmetic is checked: an
/// overflow or a negative result throws instead of wrapping.
struct Funds {
  std::uint64_t units = 0;

  constexpr Funds() = default;
  constexpr explicit Funds(std::uint64_t u) : units(u) {}

  friend constexpr auto operator<=>(Funds, Funds) = default;

  friend Funds operator+(Funds a, Funds b) {
    if (a.units > UINT64_MAX - b.units)
      throw Error(ErrorCode::kOverflow, "funds addition overflows");
    return Funds{a.units + b.units};
  }
  friend Funds operator-(Funds a, Funds b) {
    if (b.units > a.units)
      throw Error(ErrorCode::kInsufficientFunds, "funds subtraction underflows");
    return Funds{a.units - b.units};
  }
  Funds& operator+=(Funds o) { return *this = *this + o; }
  Funds& operator-=(Funds o) { return *this = *this - o; }
};

/// floor(amount * bp / 10000), exact for every 64-bit amount.
inline Funds apply_basis_points(Funds amount, std::uint64_t bp) {
  unsigned __int128 product =
      static_cast<unsigned __int128>(amount.units) * bp / kBasisPointScale;
  if (product > UINT64_MAX)
    throw Error(ErrorCode::kOverflow, "basis point product overflows");
  return Funds{static_cast<std::uint64_t>(product)};
}

struct Address {
  Hash32 bytes{};

  friend auto operator<=>(const Address&, const Address&) = default;
  std::string hex() const;
};

std::string to_hex(ByteView bytes);
/// Returns false on odd length or non-hex characters.
bool from_hex(std::string_view hex, Bytes& out);

}  // namespace parkchain
