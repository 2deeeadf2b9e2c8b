#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "parkchain/types.hpp"

namespace parkchain::sigchain {

inline constexpr std::size_t kEncodedVoucherSize = 40;
inline constexpr std::size_t kSignatureSize = 64;
inline constexpr std::size_t kVoucherWireSize = kEncodedVoucherSize + kSignatureSize;

using ChannelId = Hash32;
using Signature = std::array<std::uint8_t, kSignatureSize>;
using EncodedVoucher = std::array<std::uint8_t, kEncodedVoucherSize>;

struct PublicKey {
  std::array<std::uint8_t, 32> bytes{};
  friend auto operator<=>(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  std::array<std::uint8_t, 64> secret{};
  PublicKey public_key;
};

/// Off-ledger promise of the payer: "I owe `cumulative` in total on this
/// channel". Later vouchers supersede earlier ones.
struct Voucher {
  ChannelId channel_id{};
  Funds cumulative;
  Signature signature{};

  friend bool operator==(const Voucher&, const Voucher&) = default;
};

Hash32 sha256(ByteView data);

/// Ed25519 key pair whose 32-byte seed is SHA-256 over the big-endian seed.
KeyPair derive_keypair(std::uint64_t seed);

/// Address is the SHA-256 digest of the public key.
Address address_of(const PublicKey& key);

/// channel_id (32 bytes) followed by cumulative as 8 bytes big-endian.
EncodedVoucher encode_voucher(const ChannelId& channel_id, Funds cumulative);

Voucher sign_voucher(const KeyPair& keys, const ChannelId& channel_id,
                     Funds cumulative);

bool verify_voucher(const PublicKey& key, const Voucher& voucher);

/// Signs an arbitrary canonical message; exposed for tampering tests.
Signature sign_message(const KeyPair& keys, ByteView message);
bool verify_message(const PublicKey& key, ByteView message,
                    const Signature& signature);

/// 40-byte canonical message followed by the signature, hex-encoded.
std::string voucher_to_hex(const Voucher& voucher);
std::optional<Voucher> voucher_from_hex(std::string_view hex);

}  // namespace parkchain::sigchain
