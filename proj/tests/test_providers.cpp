#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "world.hpp"

using namespace parkchain;
using testing::error_of;
using testing::flat_policy;
using testing::World;

namespace {

constexpr Duration kWeek = 604800;

providers::RentingTerms terms_for(std::set<providers::StallId> stalls) {
  providers::RentingTerms terms;
  terms.stalls = std::move(stalls);
  terms.rent_fee = Funds{10'000};
  terms.period = kWeek;
  terms.landlord_share = 1000;
  terms.penalty_rate = 500;
  return terms;
}

}  // namespace

TEST_SUITE("providers") {

TEST_CASE("lot creation") {
  World w;
  const auto& lot = w.engine.marketplace().lot(w.lot);
  CHECK(lot.id == "lot:1");
  CHECK(lot.stalls.size() == 10);
  for (const auto& [id, stall] : lot.stalls) {
    CHECK(stall.controller == w.lot);
    CHECK_FALSE(stall.occupied_by);
  }
  CHECK(lot.renting_contracts.empty());
  CHECK(lot.active_sessions.empty());
  CHECK(error_of([&] {
          w.engine.create_parking_lot(w.stranger.address, w.contract, 3, flat_policy(1));
        }) == ErrorCode::kUnauthorized);
  CHECK(error_of([&] {
          w.engine.create_parking_lot(w.landlord.address, w.contract, 0, flat_policy(1));
        }) == ErrorCode::kInvalidTerms);
}

TEST_CASE("tenancy requests") {
  World w;
  CHECK(error_of([&] {
          w.engine.request_tenancy(w.tenant.address, w.lot, terms_for({10}));
        }) == ErrorCode::kUnknownStall);
  CHECK(error_of([&] { w.engine.request_tenancy(w.tenant.address, w.lot, terms_for({})); }) ==
        ErrorCode::kInvalidTerms);
  auto bad_share = terms_for({0});
  bad_share.landlord_share = 9600;
  CHECK(error_of([&] { w.engine.request_tenancy(w.tenant.address, w.lot, bad_share); }) ==
        ErrorCode::kShareOverflow);

  auto renting = w.rent({0, 1});
  const auto& contract = w.engine.marketplace().renting_contract(renting);
  CHECK(contract.next_due == kWeek);
  const auto& lot = w.engine.marketplace().lot(w.lot);
  CHECK(lot.stalls.at(0).controller == contract.tenant_provider);
  CHECK(lot.stalls.at(2).controller == w.lot);
  CHECK(error_of([&] {
          w.engine.request_tenancy(w.stranger.address, w.lot, terms_for({1, 2}));
        }) == ErrorCode::kOverlap);
}

TEST_CASE("approval is stale once another contract took a stall") {
  World w;
  auto first = w.engine.request_tenancy(w.tenant.address, w.lot, terms_for({3}));
  auto second = w.engine.request_tenancy(w.stranger.address, w.lot, terms_for({3, 4}));
  CHECK(error_of([&] { w.engine.approve_tenancy(w.stranger.address, first); }) ==
        ErrorCode::kUnauthorized);
  w.engine.approve_tenancy(w.landlord.address, first);
  CHECK(error_of([&] { w.engine.approve_tenancy(w.landlord.address, second); }) ==
        ErrorCode::kStale);
  CHECK(error_of([&] { w.engine.approve_tenancy(w.landlord.address, first); }) ==
        ErrorCode::kNotPending);
  w.engine.reject_tenancy(w.landlord.address, second);
  CHECK(w.engine.marketplace().tenancy_request(second).status ==
        registry::RequestStatus::kRejected);
}

TEST_CASE("approval waits for the lot's own session on a requested stall") {
  World w;
  auto request = w.engine.request_tenancy(w.tenant.address, w.lot, terms_for({2}));
  auto channel = w.engine.start_parking(w.driver.address, w.car, w.lot, 2, 3600, Funds{1000});
  CHECK(error_of([&] { w.engine.approve_tenancy(w.landlord.address, request); }) ==
        ErrorCode::kStallBusy);
  w.engine.advance_to(3600);
  auto v = w.engine.next_voucher(channel, w.driver.keys);
  w.engine.accept_voucher(channel, v);
  w.engine.settle_channel(w.landlord.address, v);
  CHECK_NOTHROW(w.engine.approve_tenancy(w.landlord.address, request));
}

TEST_CASE("rent payments") {
  World w;
  auto renting = w.rent({0});
  auto landlord_before = w.engine.ledger().balance(w.landlord.address);

  SUBCASE("on time") {
    w.engine.advance_to(kWeek);
    auto p = w.engine.pay_rent(w.tenant.address, renting);
    CHECK(p.total() == Funds{10'000});
    CHECK(p.periods_late == 0);
    CHECK(w.engine.marketplace().renting_contract(renting).next_due == 2 * kWeek);
    CHECK(w.engine.ledger().balance(w.landlord.address) == landlord_before + Funds{10'000});
  }
  SUBCASE("early payment covers the next installment") {
    auto p = w.engine.pay_rent(w.tenant.address, renting);
    CHECK(p.total() == Funds{10'000});
    CHECK(p.paid_for_due == kWeek);
  }
  SUBCASE("two periods late") {
    w.engine.advance_to(3 * kWeek);
    auto p = w.engine.pay_rent(w.tenant.address, renting);
    CHECK(p.periods_late == 2);
    CHECK(p.penalty == Funds{1000});
    CHECK(p.total() == Funds{11'000});
  }
  SUBCASE("one second short of a full period") {
    w.engine.advance_to(2 * kWeek - 1);
    CHECK(w.engine.pay_rent(w.tenant.address, renting).penalty == Funds{0});
  }
  SUBCASE("only the tenant pays") {
    CHECK(error_of([&] { w.engine.pay_rent(w.landlord.address, renting); }) ==
          ErrorCode::kUnauthorized);
  }
}

TEST_CASE("rent_due matches the stepping oracle") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 2000; ++i) {
    Funds fee{rng() % 1'000'000};
    BasisPoints rate = rng() % 20'000;
    Duration period = 1 + rng() % (4 * kWeek);
    TimePoint next_due = period + rng() % (10 * kWeek);
    TimePoint now = rng() % 4 == 0 ? next_due - rng() % period : next_due + rng() % (6 * period);
    auto p = providers::rent_due(fee, rate, period, next_due, now);
    auto k = now > next_due ? oracle::late_periods(next_due, period, now) : 0;
    CHECK(p.periods_late == k);
    CHECK(p.total().units == oracle::rent_charge(fee.units, rate, k));
  }
}

TEST_CASE("payment policy") {
  World w;
  CHECK(error_of([&] { w.engine.set_payment_policy(w.stranger.address, w.lot, flat_policy(5)); }) ==
        ErrorCode::kUnauthorized);

  SUBCASE("applies to sessions opened afterwards") {
    w.engine.set_payment_policy(w.landlord.address, w.lot, flat_policy(2000));
    auto ch = w.engine.start_parking(w.driver.address, w.car, w.lot, 0, 3600, Funds{2000});
    CHECK(w.engine.channels().channel(ch).quoted == Funds{2000});
  }
  SUBCASE("sessions keep the policy they opened with") {
    auto ch = w.engine.start_parking(w.driver.address, w.car, w.lot, 0, 3600, Funds{5000});
    w.engine.set_payment_policy(w.landlord.address, w.lot, flat_policy(4000));
    w.engine.advance_to(3600);
    CHECK(w.engine.next_voucher(ch, w.driver.keys).cumulative == Funds{1000});
  }
  SUBCASE("tenant policy defaults to the lot's") {
    auto renting = w.rent({0});
    CHECK(w.engine.marketplace().provider(w.tenant_provider(renting)).policy ==
          w.engine.marketplace().lot(w.lot).policy);
  }
}

TEST_CASE("service provider shares") {
  World w;
  auto renting = w.rent({0}, 1000);
  auto tp = w.tenant_provider(renting);
  // Tax 500 + landlord 1000 + service 200 = 1700.
  CHECK(w.engine.register_service_provider(w.tenant.address, tp, w.sp.address, 200) == "sp:1");
  CHECK(w.engine.register_service_provider(w.tenant.address, tp, w.sp.address, 0) == "sp:2");
  // 500 + 1000 + 9000 = 10500.
  CHECK(error_of([&] {
          w.engine.register_service_provider(w.tenant.address, tp, w.sp.address, 9000);
        }) == ErrorCode::kShareOverflow);
  CHECK(w.engine.register_service_provider(w.landlord.address, w.lot, w.sp.address, 9500) ==
        "sp:3");
  CHECK(error_of([&] {
          w.engine.register_service_provider(w.stranger.address, tp, w.sp.address, 1);
        }) == ErrorCode::kUnauthorized);
}

TEST_CASE("occupancy reports") {
  World w;
  auto ch = w.engine.start_parking(w.driver.address, w.car, w.lot, 4, 3600, Funds{1000});
  (void)ch;
  CHECK(w.engine.observe_occupancy(w.landlord.address, w.lot, 4, "AB123").kind ==
        "OCCUPANCY_OK");
  CHECK(w.engine.observe_occupancy(w.landlord.address, w.lot, 4, "XY789").kind ==
        "OCCUPANCY_MISMATCH");
  CHECK(w.engine.observe_occupancy(w.landlord.address, w.lot, 4, std::nullopt).kind ==
        "OCCUPANCY_MISMATCH");
  CHECK(w.engine.observe_occupancy(w.landlord.address, w.lot, 5, "XY789").kind ==
        "OCCUPANCY_VIOLATION");
  CHECK(w.engine.observe_occupancy(w.landlord.address, w.lot, 5, std::nullopt).kind ==
        "OCCUPANCY_OK");
  CHECK(error_of([&] {
          w.engine.observe_occupancy(w.tenant.address, w.lot, 5, std::nullopt);
        }) == ErrorCode::kUnauthorized);
  CHECK(error_of([&] {
          w.engine.observe_occupancy(w.landlord.address, w.lot, 99, std::nullopt);
        }) == ErrorCode::kUnknownStall);
}

TEST_CASE("start_parking") {
  World w;
  auto renting = w.rent({0});
  auto tp = w.tenant_provider(renting);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver.address, w.car, tp, 0, 3 * 3600, Funds{2999});
        }) == ErrorCode::kInsufficientDeposit);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver2.address, w.car, tp, 0, 3600, Funds{5000});
        }) == ErrorCode::kUnauthorized);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver.address, w.car, w.lot, 0, 3600, Funds{5000});
        }) == ErrorCode::kForeignStall);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver.address, w.car, tp, 0, 3600, Funds{5000}, "sp:9");
        }) == ErrorCode::kNotFound);

  auto ch = w.engine.start_parking(w.driver.address, w.car, tp, 0, 3 * 3600, Funds{5000});
  const auto& state = w.engine.channels().channel(ch);
  CHECK(state.quoted == Funds{3000});
  CHECK(state.locked == Funds{5000});
  CHECK(w.engine.ledger().balance(w.driver.address) == Funds{95'000});
  CHECK(w.engine.registry().car(w.car).parked->stall == 0);

  CHECK(error_of([&] {
          w.engine.start_parking(w.driver.address, w.car, w.lot, 1, 3600, Funds{5000});
        }) == ErrorCode::kCarAlreadyParked);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver2.address, w.car2, tp, 0, 3600, Funds{5000});
        }) == ErrorCode::kStallBusy);
}

TEST_CASE("termination waits for sessions and returns stalls") {
  World w;
  auto renting = w.rent({0, 1});
  auto tp = w.tenant_provider(renting);
  auto ch = w.engine.start_parking(w.driver.address, w.car, tp, 1, 3600, Funds{1000});
  CHECK(error_of([&] { w.engine.terminate_tenancy(w.tenant.address, renting); }) ==
        ErrorCode::kActiveSessions);
  CHECK(error_of([&] { w.engine.terminate_tenancy(w.stranger.address, renting); }) ==
        ErrorCode::kUnauthorized);
  w.engine.advance_to(3600 + kDefaultGrace);
  w.engine.timeout_refund(w.driver.address, ch);

  w.engine.terminate_tenancy(w.landlord.address, renting);
  const auto& lot = w.engine.marketplace().lot(w.lot);
  CHECK(lot.stalls.at(0).controller == w.lot);
  CHECK(lot.stalls.at(1).controller == w.lot);
  CHECK(error_of([&] { w.engine.terminate_tenancy(w.tenant.address, renting); }) ==
        ErrorCode::kTerminated);
  CHECK(error_of([&] { w.engine.pay_rent(w.tenant.address, renting); }) ==
        ErrorCode::kTerminated);
  CHECK(error_of([&] {
          w.engine.start_parking(w.driver.address, w.car, tp, 0, w.engine.now() + 60, Funds{100});
        }) == ErrorCode::kTerminated);

  // Stalls can be rented again.
  auto again = w.rent({0, 1});
  CHECK(again == "renting:2");
}

TEST_CASE("rented stall sets stay disjoint under random requests") {
  World w(500, 12);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::set<providers::StallId> stalls;
    auto n = 1 + rng() % 3;
    while (stalls.size() < n) stalls.insert(rng() % 12);
    try {
      auto request = w.engine.request_tenancy(w.tenant.address, w.lot, terms_for(stalls));
      w.engine.approve_tenancy(w.landlord.address, request);
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::kOverlap || e.code() == ErrorCode::kStale));
    }
    if (rng() % 3 == 0) {
      for (const auto& [id, c] : w.engine.marketplace().renting_contracts()) {
        if (c.status == providers::RentingStatus::kActive) {
          w.engine.terminate_tenancy(w.landlord.address, id);
          break;
        }
      }
    }
    std::map<providers::StallId, int> holders;
    for (const auto& [id, c] : w.engine.marketplace().renting_contracts())
      if (c.status == providers::RentingStatus::kActive)
        for (auto s : c.terms.stalls) ++holders[s];
    for (const auto& [s, count] : holders) CHECK(count == 1);
  }
}

}  // TEST_SUITE
