#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <string>

#include "parkchain/engine.hpp"
#include "parkchain/scenario.hpp"

namespace testing {

using namespace parkchain;

struct Actor {
  std::uint64_t seed = 0;
  Address address;
  sigchain::KeyPair keys;
};

inline pricing::PolicyPtr flat_policy(std::uint64_t rate) {
  return std::make_shared<pricing::WeekHourPolicy>(pricing::WeekHourPolicy::uniform(rate));
}

/// One administrator, one landlord with an approved contract and a lot, a
/// prospective tenant, two drivers, a service provider and a stranger. The
/// genesis closes after construction.
struct World {
  explicit World(BasisPoints tax_rate = 500, std::uint32_t stalls = 10,
                 std::uint64_t rate = 1000, Duration grace = kDefaultGrace)
      : engine(1, Funds{0}, EngineConfig{grace}) {
    admin = {1, engine.administrator(), sigchain::derive_keypair(1)};
    landlord = make(2, 1'000'000);
    tenant = make(3, 1'000'000);
    driver = make(4, 100'000);
    driver2 = make(5, 100'000);
    sp = make(6, 0);
    stranger = make(7, 100'000);
    engine.ledger().close_genesis();

    auto request = engine.request_landlord_registration(
        landlord.address, {tax_rate, "plot 7", 0, 100 * 604800});
    contract = engine.decide_registration(admin.address, request, true)->id;
    lot = engine.create_parking_lot(landlord.address, contract, stalls, flat_policy(rate));
    car = engine.register_car(driver.address, "AB123");
    car2 = engine.register_car(driver2.address, "XY789");
  }

  Actor make(std::uint64_t seed, std::uint64_t balance) {
    return {seed, engine.create_account(seed, Funds{balance}), sigchain::derive_keypair(seed)};
  }

  /// Rents `stalls` to the tenant; returns the renting contract id.
  std::string rent(std::set<providers::StallId> stalls, BasisPoints landlord_share = 1000,
                   std::uint64_t fee = 10'000, Duration period = 604800,
                   BasisPoints penalty = 500) {
    providers::RentingTerms terms;
    terms.stalls = std::move(stalls);
    terms.rent_fee = Funds{fee};
    terms.period = period;
    terms.landlord_share = landlord_share;
    terms.penalty_rate = penalty;
    auto request = engine.request_tenancy(tenant.address, lot, std::move(terms));
    return engine.approve_tenancy(landlord.address, request);
  }

  std::string tenant_provider(const std::string& renting) const {
    return engine.marketplace().renting_contract(renting).tenant_provider;
  }

  Engine engine;
  Actor admin, landlord, tenant, driver, driver2, sp, stranger;
  std::string contract, lot, car, car2;
};

}  // namespace testing

namespace testing {

/// Runs `f` and returns the engine error code it raised, if any.
template <class F>
std::optional<parkchain::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const parkchain::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing

namespace testing {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

inline std::string scenario_path(const std::string& name) {
  return std::string(PARKCHAIN_SCENARIO_DIR) + "/" + name;
}

/// Opening balance per account address, derived from the scenario seed.
inline std::map<std::string, std::int64_t> genesis_holders(const nlohmann::json& doc) {
  std::map<std::string, std::int64_t> holders;
  for (const auto& entry : doc["genesis"]) {
    auto seed = parkchain::sim::actor_seed(doc["seed"].get<std::uint64_t>(),
                                           entry["id"].get<std::string>());
    auto address =
        parkchain::sigchain::address_of(parkchain::sigchain::derive_keypair(seed).public_key);
    holders[address.hex()] = entry.value("balance", std::int64_t{0});
  }
  return holders;
}

}  // namespace testing
