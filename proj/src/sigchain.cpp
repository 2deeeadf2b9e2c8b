#include "parkchain/sigchain.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

namespace parkchain::sigchain {
namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
    return true;
  }();
  (void)ready;
}

void put_be64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

std::uint64_t get_be64(const std::uint8_t* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

}  // namespace

Hash32 sha256(ByteView data) {
  ensure_sodium();
  Hash32 out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

KeyPair derive_keypair(std::uint64_t seed) {
  ensure_sodium();
  std::array<std::uint8_t, 8> raw{};
  put_be64(raw.data(), seed);
  Hash32 key_seed = sha256(raw);
  KeyPair keys;
  crypto_sign_seed_keypair(keys.public_key.bytes.data(), keys.secret.data(),
                           key_seed.data());
  sodium_memzero(key_seed.data(), key_seed.size());
  return keys;
}

Address address_of(const PublicKey& key) {
  return Address{sha256(key.bytes)};
}

EncodedVoucher encode_voucher(const ChannelId& channel_id, Funds cumulative) {
  EncodedVoucher out{};
  std::copy(channel_id.begin(), channel_id.end(), out.begin());
  put_be64(out.data() + channel_id.size(), cumulative.units);
  return out;
}

Signature sign_message(const KeyPair& keys, ByteView message) {
  ensure_sodium();
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       keys.secret.data());
  return sig;
}

bool verify_message(const PublicKey& key, ByteView message,
                    const Signature& signature) {
  ensure_sodium();
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(), key.bytes.data()) == 0;
}

Voucher sign_voucher(const KeyPair& keys, const ChannelId& channel_id,
                     Funds cumulative) {
  auto message = encode_voucher(channel_id, cumulative);
  return Voucher{channel_id, cumulative, sign_message(keys, message)};
}

bool verify_voucher(const PublicKey& key, const Voucher& voucher) {
  auto message = encode_voucher(voucher.channel_id, voucher.cumulative);
  return verify_message(key, message, voucher.signature);
}

std::string voucher_to_hex(const Voucher& voucher) {
  std::array<std::uint8_t, kVoucherWireSize> wire{};
  auto message = encode_voucher(voucher.channel_id, voucher.cumulative);
  std::copy(message.begin(), message.end(), wire.begin());
  std::copy(voucher.signature.begin(), voucher.signature.end(),
            wire.begin() + kEncodedVoucherSize);
  return to_hex(wire);
}

std::optional<Voucher> voucher_from_hex(std::string_view hex) {
  Bytes wire;
  if (!from_hex(hex, wire) || wire.size() != kVoucherWireSize)
    return std::nullopt;
  Voucher v;
  std::copy_n(wire.begin(), v.channel_id.size(), v.channel_id.begin());
  v.cumulative = Funds{get_be64(wire.data() + v.channel_id.size())};
  std::copy_n(wire.begin() + kEncodedVoucherSize, kSignatureSize,
              v.signature.begin());
  return v;
}

}  // namespace parkchain::sigchain
