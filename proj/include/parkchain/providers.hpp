#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "parkchain/ledger.hpp"
#include "parkchain/pricing.hpp"
#include "parkchain/registry.hpp"
#include "parkchain/settlement.hpp"

namespace parkchain::providers {

using StallId = std::uint32_t;

struct StallState {
  StallId id = 0;
  /// Provider id of the lot or of the tenant renting the stall.
  std::string controller;
  std::optional<std::string> occupied_by;
  bool reserved = false;
};

struct ServiceProvider {
  std::string id;
  Address account;
  BasisPoints share = 0;
};

struct ActiveSession {
  sigchain::ChannelId channel{};
  std::string car;
  std::string plate;
};

/// State shared by every parking provider (lots and tenants).
struct ProviderState {
  std::string id;
  Address owner;
  pricing::PolicyPtr policy;
  std::map<std::string, ServiceProvider> service_providers;
  std::map<StallId, ActiveSession> active_sessions;
};

struct ParkingLot : ProviderState {
  std::string landlord_contract;
  std::map<StallId, StallState> stalls;
  /// Renting contract ids, active or terminated.
  std::set<std::string> renting_contracts;
  std::int64_t rating = 0;
  std::string location;
};

struct Tenant : ProviderState {
  std::string lot;
  std::string renting_contract;
  bool active = true;
};

enum class RentingStatus { kActive, kTerminated };

struct RentingTerms {
  std::set<StallId> stalls;
  Funds rent_fee;
  Duration period = 0;
  BasisPoints landlord_share = 0;
  BasisPoints penalty_rate = 0;
  /// Tenant's opening policy; the lot's policy when absent.
  pricing::PolicyPtr policy;
};

/// Whole-field replacement; recognised keys are rent_fee, period,
/// landlord_share and penalty_rate.
RentingTerms with_changes(RentingTerms terms, const Json& changes);

struct RentingContract {
  std::string id;
  std::string lot;
  std::string tenant_provider;
  Address tenant;
  RentingTerms terms;
  TimePoint next_due = 0;
  RentingStatus status = RentingStatus::kActive;
  Funds rent_paid;
  Funds penalties_paid;
};

struct TenancyRequest {
  std::string id;
  std::string lot;
  Address tenant;
  RentingTerms terms;
  registry::RequestStatus status = registry::RequestStatus::kPending;
};

struct RentPayment {
  Funds rent;
  Funds penalty;
  std::uint64_t periods_late = 0;
  TimePoint paid_for_due = 0;

  Funds total() const { return rent + penalty; }
};

/// Amount due when paying at `now` for an installment due at `next_due`:
/// rent_fee plus floor(rent_fee * penalty_rate * k / 10000), where k counts
/// whole periods elapsed past next_due.
RentPayment rent_due(Funds rent_fee, BasisPoints penalty_rate, Duration period,
                     TimePoint next_due, TimePoint now);

/// Parking lots, tenants and renting contracts.
class Marketplace {
 public:
  Marketplace(Ledger& ledger, registry::Registry& registry);

  std::string create_parking_lot(const Address& landlord,
                                 const std::string& landlord_contract,
                                 std::uint32_t stall_count,
                                 pricing::PolicyPtr policy,
                                 std::string location = {});

  std::string request_tenancy(const Address& tenant, const std::string& lot,
                              RentingTerms terms);

  /// Returns the renting contract id. The tenant's provider id is recorded on
  /// the contract.
  std::string approve_tenancy(const Address& landlord, const std::string& request);

  void reject_tenancy(const Address& landlord, const std::string& request);

  /// Either party may end the contract once the tenant has no open sessions.
  void terminate_tenancy(const Address& caller, const std::string& contract);

  RentPayment pay_rent(const Address& tenant, const std::string& contract);

  void set_payment_policy(const Address& caller, const std::string& provider,
                          pricing::PolicyPtr policy);

  std::string register_service_provider(const Address& caller,
                                        const std::string& provider,
                                        const Address& sp, BasisPoints share);

  EventRecord observe_occupancy(const Address& caller, const std::string& lot,
                                StallId stall,
                                const std::optional<std::string>& plate);

  const ProviderState& provider(const std::string& id) const;
  bool is_tenant(const std::string& provider_id) const;
  const ParkingLot& lot(const std::string& id) const;
  const Tenant& tenant(const std::string& id) const;
  const RentingContract& renting_contract(const std::string& id) const;
  const TenancyRequest& tenancy_request(const std::string& id) const;
  const std::map<std::string, ParkingLot>& lots() const { return lots_; }
  const std::map<std::string, Tenant>& tenants() const { return tenants_; }
  const std::map<std::string, RentingContract>& renting_contracts() const {
    return contracts_;
  }

  /// Lot owning the stall namespace of a provider (itself for a lot).
  const ParkingLot& lot_of(const std::string& provider_id) const;

  /// Throws unless the provider can take a new session on `stall` right now.
  void check_stall_available(const std::string& provider_id, StallId stall);

  /// Share set for a session on `provider_id`, optionally routed through a
  /// service provider. Tax and landlord shares are read from the current
  /// contract terms.
  settlement::Shares shares_for(const std::string& provider_id,
                                const std::optional<std::string>& sp) const;
  const ServiceProvider& service_provider(const std::string& provider_id,
                                          const std::string& sp) const;

  void begin_session(const std::string& provider_id, StallId stall,
                     ActiveSession session);
  void end_session(const std::string& provider_id, StallId stall);

  /// Party check and validation of a renting amendment; returns the terms
  /// that would result.
  RentingTerms preview_amendment(const std::string& contract,
                                 const Json& changes) const;
  void apply_renting_changes(const std::string& contract, const RentingTerms& terms);

  /// Throws kShareOverflow if any registered service provider of the lot or
  /// its tenants would exceed 10000 bp under `tax_rate`.
  void check_tax_rate(const std::string& landlord_contract, BasisPoints tax_rate) const;

 private:
  ProviderState& provider_mut(const std::string& id);
  ParkingLot& lot_mut(const std::string& id);
  BasisPoints tax_rate_of(const ParkingLot& lot) const;
  void check_renting_terms(const RentingTerms& terms, const ParkingLot& lot) const;
  void check_disjoint(const ParkingLot& lot, const std::set<StallId>& stalls) const;

  Ledger& ledger_;
  registry::Registry& registry_;
  std::map<std::string, ParkingLot> lots_;
  std::map<std::string, Tenant> tenants_;
  std::map<std::string, RentingContract> contracts_;
  std::map<std::string, TenancyRequest> requests_;
  std::uint64_t next_lot_ = 1;
  std::uint64_t next_tenant_ = 1;
  std::uint64_t next_contract_ = 1;
  std::uint64_t next_request_ = 1;
  std::uint64_t next_sp_ = 1;
};

}  // namespace parkchain::providers
