#include <doctest.h>

#include <random>
#include <set>

#include "parkchain/sigchain.hpp"

using namespace parkchain;
using namespace parkchain::sigchain;

namespace {

ChannelId id_with_last(std::uint8_t last) {
  ChannelId id{};
  id.back() = last;
  return id;
}

}  // namespace

TEST_SUITE("sigchain") {

TEST_CASE("encode_voucher layout") {
  auto zero = encode_voucher(ChannelId{}, Funds{0});
  CHECK(zero.size() == 40);
  for (auto b : zero) CHECK(b == 0);

  auto one = encode_voucher(id_with_last(1), Funds{1});
  CHECK(one[31] == 0x01);
  CHECK(one[39] == 0x01);
  for (std::size_t i = 0; i < 40; ++i) {
    if (i != 31 && i != 39) CHECK(one[i] == 0);
  }

  auto be = encode_voucher(ChannelId{}, Funds{0x0102030405060708ULL});
  CHECK(be[32] == 0x01);
  CHECK(be[39] == 0x08);
}

TEST_CASE("encode_voucher is injective on a sample") {
  std::set<EncodedVoucher> seen;
  for (std::uint8_t id = 0; id < 16; ++id)
    for (std::uint64_t amount = 0; amount < 16; ++amount)
      CHECK(seen.insert(encode_voucher(id_with_last(id), Funds{amount})).second);
}

TEST_CASE("sign and verify") {
  auto keys = derive_keypair(11);
  auto other = derive_keypair(12);
  auto channel = id_with_last(9);

  auto v = sign_voucher(keys, channel, Funds{100});
  CHECK(verify_voucher(keys.public_key, v));
  CHECK(sign_voucher(keys, channel, Funds{100}) == v);
  CHECK_FALSE(verify_voucher(other.public_key, v));

  auto bumped = v;
  bumped.cumulative = Funds{101};
  CHECK_FALSE(verify_voucher(keys.public_key, bumped));

  auto moved = v;
  moved.channel_id[0] ^= 0x80;
  CHECK_FALSE(verify_voucher(keys.public_key, moved));
}

TEST_CASE("key derivation is deterministic and addresses are distinct") {
  CHECK(derive_keypair(5).public_key == derive_keypair(5).public_key);
  CHECK(address_of(derive_keypair(5).public_key) == address_of(derive_keypair(5).public_key));
  CHECK_FALSE(address_of(derive_keypair(5).public_key) ==
              address_of(derive_keypair(6).public_key));
}

TEST_CASE("garbage input is rejected, never a crash") {
  PublicKey zero_key{};
  Voucher junk{};
  CHECK_FALSE(verify_voucher(zero_key, junk));
  PublicKey ones{};
  ones.bytes.fill(0xff);
  junk.signature.fill(0xff);
  CHECK_FALSE(verify_voucher(ones, junk));
}

TEST_CASE("wire form round trip") {
  auto keys = derive_keypair(3);
  auto v = sign_voucher(keys, id_with_last(4), Funds{123456});
  auto hex = voucher_to_hex(v);
  CHECK(hex.size() == 2 * kVoucherWireSize);
  CHECK(hex.substr(0, 80) == to_hex(encode_voucher(v.channel_id, v.cumulative)));
  auto back = voucher_from_hex(hex);
  REQUIRE(back);
  CHECK(*back == v);
  CHECK_FALSE(voucher_from_hex(hex.substr(2)));
  CHECK_FALSE(voucher_from_hex("zz" + hex.substr(2)));
}

TEST_CASE("fuzz: round trip holds and any single-byte mutation breaks it") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int iter = 0; iter < 200; ++iter) {
    auto keys = derive_keypair(rng());
    ChannelId id{};
    for (auto& b : id) b = static_cast<std::uint8_t>(rng());
    Funds amount{rng()};
    auto v = sign_voucher(keys, id, amount);
    REQUIRE(verify_voucher(keys.public_key, v));

    auto message = encode_voucher(id, amount);
    CHECK(message.size() == kEncodedVoucherSize);
    auto pos = rng() % (kEncodedVoucherSize + kSignatureSize);
    auto flip = static_cast<std::uint8_t>(1 + rng() % 255);
    if (pos < kEncodedVoucherSize) {
      message[pos] ^= flip;
      CHECK_FALSE(verify_message(keys.public_key, message, v.signature));
    } else {
      auto sig = v.signature;
      sig[pos - kEncodedVoucherSize] ^= flip;
      CHECK_FALSE(verify_message(keys.public_key, message, sig));
    }
  }
}

}  // TEST_SUITE
