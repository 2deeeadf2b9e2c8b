#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "parkchain/settlement.hpp"
#include "world.hpp"

using namespace parkchain;
using namespace parkchain::settlement;
using testing::error_of;

TEST_SUITE("settlement") {

TEST_CASE("nothing claimed refunds everything") {
  auto b = split(Funds{5000}, Funds{0}, {500, 200, 1000});
  CHECK(b == Breakdown{Funds{0}, Funds{0}, Funds{0}, Funds{0}, Funds{0}, Funds{5000}});
}

TEST_CASE("tenant session with a service provider") {
  auto b = split(Funds{5000}, Funds{3000}, {500, 200, 1000});
  CHECK(b.tax == Funds{150});
  CHECK(b.service == Funds{60});
  CHECK(b.landlord == Funds{300});
  CHECK(b.operator_share == Funds{2490});
  CHECK(b.refund == Funds{2000});
}

TEST_CASE("shares floor independently on the gross amount") {
  auto b = split(Funds{10}, Funds{9}, {3333, 3333, 3333});
  CHECK(b.tax == Funds{2});
  CHECK(b.service == Funds{2});
  CHECK(b.landlord == Funds{2});
  CHECK(b.operator_share == Funds{3});
}

TEST_CASE("share overflow and over-claim") {
  CHECK(error_of([] { check_shares({9000, 1001, 0}); }) == ErrorCode::kShareOverflow);
  CHECK_NOTHROW(check_shares({5000, 2500, 2500}));
  CHECK(error_of([] { split(Funds{10}, Funds{11}, {}); }) == ErrorCode::kInvalidVoucher);
}

TEST_CASE("json keys") {
  auto j = to_json(split(Funds{5000}, Funds{3000}, {500, 200, 1000}));
  CHECK(j == nlohmann::json{{"claimed", 3000}, {"tax", 150},      {"service", 60},
                            {"landlord", 300}, {"operator", 2490}, {"refund", 2000}});
}

TEST_CASE("randomized identities against the oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t locked = rng() >> (rng() % 64);
    std::uint64_t claimed = locked == 0 ? 0 : rng() % (locked + 1);
    BasisPoints tax = rng() % 10001;
    BasisPoints sp = rng() % (10001 - tax);
    BasisPoints ll = rng() % (10001 - tax - sp);
    auto b = split(Funds{locked}, Funds{claimed}, {tax, sp, ll});
    auto o = oracle::settlement(locked, claimed, tax, sp, ll);
    CHECK(b.tax.units == o.tax);
    CHECK(b.service.units == o.service);
    CHECK(b.landlord.units == o.landlord);
    CHECK(b.operator_share.units == o.operator_share);
    CHECK(b.refund.units == o.refund);
    // The five outputs always add back up to the escrow.
    CHECK(static_cast<oracle::u128>(o.tax) + o.service + o.landlord + o.operator_share +
              o.refund ==
          locked);
  }
}

}  // TEST_SUITE
