#include "parkchain/types.hpp"

namespace parkchain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateSeed: return "duplicate seed";
    case ErrorCode::kMintAfterGenesis: return "mint after genesis";
    case ErrorCode::kUnknownAddress: return "unknown address";
    case ErrorCode::kInsufficientFunds: return "insufficient funds";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kUnauthorized: return "unauthorized";
    case ErrorCode::kInvalidTerms: return "invalid terms";
    case ErrorCode::kDuplicateRequest: return "duplicate request";
    case ErrorCode::kNotPending: return "not pending";
    case ErrorCode::kDuplicatePlate: return "duplicate plate";
    case ErrorCode::kEmptyPlate: return "empty plate";
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kInactiveContract: return "inactive contract";
    case ErrorCode::kNotProposed: return "not proposed";
    case ErrorCode::kUnknownStall: return "unknown stall";
    case ErrorCode::kOverlap: return "overlap";
    case ErrorCode::kStale: return "stale request";
    case ErrorCode::kTerminated: return "terminated";
    case ErrorCode::kShareOverflow: return "share overflow";
    case ErrorCode::kCarAlreadyParked: return "car already parked";
    case ErrorCode::kStallBusy: return "stall busy";
    case ErrorCode::kForeignStall: return "foreign stall";
    case ErrorCode::kInsufficientDeposit: return "insufficient deposit";
    case ErrorCode::kInvalidInterval: return "invalid interval";
    case ErrorCode::kChannelClosed: return "channel not open";
    case ErrorCode::kInvalidVoucher: return "invalid voucher";
    case ErrorCode::kTooEarly: return "too early";
    case ErrorCode::kActiveSessions: return "active sessions";
  }
  return "unknown error";
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

bool from_hex(std::string_view hex, Bytes& out) {
  if (hex.size() % 2 != 0) return false;
  Bytes result;
  result.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return false;
    result.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  out = std::move(result);
  return true;
}

std::string Address::hex() const { return to_hex(bytes); }

}  // namespace parkchain
