#pragma once

#include <map>
#include <optional>
#include <string>

#include "parkchain/channels.hpp"
#include "parkchain/ledger.hpp"
#include "parkchain/providers.hpp"
#include "parkchain/registry.hpp"

namespace parkchain {

struct EngineConfig {
  Duration grace = kDefaultGrace;
};

/// The whole marketplace deployed on one ledger. Operations that span
/// several contracts (parking, settlement, amendments) are coordinated here;
/// everything else forwards to the owning module.
///
/// Not thread-safe: a single writer drives it. Use ledger().snapshot() to
/// hand state to readers.
class Engine {
 public:
  Engine(std::uint64_t administrator_seed, Funds administrator_balance,
         EngineConfig config = {});

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }
  const registry::Registry& registry() const { return registry_; }
  const providers::Marketplace& marketplace() const { return marketplace_; }
  const payments::ChannelBook& channels() const { return channels_; }
  const Address& administrator() const { return registry_.administrator(); }

  Address create_account(std::uint64_t seed, Funds initial_balance) {
    return ledger_.create_account(seed, initial_balance);
  }
  TimePoint advance_time(Duration delta) { return ledger_.advance_time(delta); }
  /// Moves the clock to `t`; throws kInvalidInterval if `t` is in the past.
  TimePoint advance_to(TimePoint t);
  TimePoint now() const { return ledger_.now(); }

  // Registration and amendments.
  std::string request_landlord_registration(const Address& landlord,
                                            const registry::LandlordTerms& terms) {
    return registry_.request_landlord_registration(landlord, terms);
  }
  std::optional<registry::LandlordContract> decide_registration(
      const Address& caller, const std::string& request, bool approve) {
    return registry_.decide_registration(caller, request, approve);
  }
  std::string register_car(const Address& owner, const std::string& plate) {
    return registry_.register_car(owner, plate);
  }

  /// `contract` is a landlord contract id or a renting contract id.
  std::string propose_amendment(const Address& party, const std::string& contract,
                                const Json& changes);
  /// Returns true when the amendment was accepted and applied.
  bool resolve_amendment(const Address& counterparty, const std::string& amendment,
                         bool accept);

  // Providers.
  std::string create_parking_lot(const Address& landlord,
                                 const std::string& landlord_contract,
                                 std::uint32_t stalls, pricing::PolicyPtr policy,
                                 std::string location = {}) {
    return marketplace_.create_parking_lot(landlord, landlord_contract, stalls,
                                           std::move(policy), std::move(location));
  }
  std::string request_tenancy(const Address& tenant, const std::string& lot,
                              providers::RentingTerms terms) {
    return marketplace_.request_tenancy(tenant, lot, std::move(terms));
  }
  std::string approve_tenancy(const Address& landlord, const std::string& request) {
    return marketplace_.approve_tenancy(landlord, request);
  }
  void reject_tenancy(const Address& landlord, const std::string& request) {
    marketplace_.reject_tenancy(landlord, request);
  }
  void terminate_tenancy(const Address& caller, const std::string& contract) {
    marketplace_.terminate_tenancy(caller, contract);
  }
  providers::RentPayment pay_rent(const Address& tenant, const std::string& contract) {
    return marketplace_.pay_rent(tenant, contract);
  }
  void set_payment_policy(const Address& caller, const std::string& provider,
                          pricing::PolicyPtr policy) {
    marketplace_.set_payment_policy(caller, provider, std::move(policy));
  }
  std::string register_service_provider(const Address& caller,
                                        const std::string& provider,
                                        const Address& sp, BasisPoints share) {
    return marketplace_.register_service_provider(caller, provider, sp, share);
  }
  EventRecord observe_occupancy(const Address& caller, const std::string& lot,
                                providers::StallId stall,
                                const std::optional<std::string>& plate) {
    return marketplace_.observe_occupancy(caller, lot, stall, plate);
  }

  // Parking sessions.

  /// Opens the payment channel for a car on a stall. `caller` must own the
  /// car; the deposit is escrowed in a single ledger transaction.
  payments::ChannelId start_parking(const Address& caller, const std::string& car,
                                    const std::string& provider,
                                    providers::StallId stall, TimePoint until,
                                    Funds deposit,
                                    const std::optional<std::string>& sp = std::nullopt);

  /// Off-ledger; nothing is appended to the event log.
  sigchain::Voucher next_voucher(const payments::ChannelId& channel,
                                 const sigchain::KeyPair& payer);
  sigchain::Voucher next_voucher(const payments::ChannelId& channel,
                                 const sigchain::KeyPair& payer, TimePoint now);
  bool accept_voucher(const payments::ChannelId& channel,
                      const sigchain::Voucher& voucher);
  const payments::OffchainSession& session(const payments::ChannelId& channel) const;

  settlement::Breakdown settle_channel(const Address& caller,
                                       const sigchain::Voucher& voucher);
  Funds timeout_refund(const Address& caller, const payments::ChannelId& channel);

 private:
  void close_session(const payments::ChannelState& state);

  Ledger ledger_;
  registry::Registry registry_;
  providers::Marketplace marketplace_;
  payments::ChannelBook channels_;
  std::map<payments::ChannelId, payments::OffchainSession> sessions_;
};

}  // namespace parkchain
