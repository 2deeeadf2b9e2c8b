#include "parkchain/providers.hpp"

#include <algorithm>

namespace parkchain::providers {
namespace {

using u128 = unsigned __int128;

std::uint64_t unsigned_field(const Json& value, const std::string& key) {
  if (!is_non_negative_integer(value))
    throw Error(ErrorCode::kInvalidTerms, key + " must be a non-negative integer");
  return value.get<std::uint64_t>();
}

Json stalls_json(const std::set<StallId>& stalls) {
  return Json(std::vector<StallId>(stalls.begin(), stalls.end()));
}

}  // namespace

RentingTerms with_changes(RentingTerms terms, const Json& changes) {
  if (!changes.is_object() || changes.empty())
    throw Error(ErrorCode::kInvalidTerms, "changes must be a non-empty object");
  for (const auto& [key, value] : changes.items()) {
    if (key == "rent_fee") {
      terms.rent_fee = Funds{unsigned_field(value, key)};
    } else if (key == "period") {
      terms.period = unsigned_field(value, key);
    } else if (key == "landlord_share") {
      auto share = unsigned_field(value, key);
      if (share > kBasisPointScale)
        throw Error(ErrorCode::kInvalidTerms, "landlord_share above 10000 bp");
      terms.landlord_share = static_cast<BasisPoints>(share);
    } else if (key == "penalty_rate") {
      auto rate = unsigned_field(value, key);
      if (rate > UINT32_MAX)
        throw Error(ErrorCode::kInvalidTerms, "penalty_rate out of range");
      terms.penalty_rate = static_cast<BasisPoints>(rate);
    } else {
      throw Error(ErrorCode::kInvalidTerms,
                  "renting contracts have no amendable field '" + key + "'");
    }
  }
  return terms;
}

RentPayment rent_due(Funds rent_fee, BasisPoints penalty_rate, Duration period,
                     TimePoint next_due, TimePoint now) {
  if (period == 0) throw Error(ErrorCode::kInvalidTerms, "period must be positive");
  RentPayment payment;
  payment.rent = rent_fee;
  payment.paid_for_due = next_due;
  payment.periods_late = now > next_due ? (now - next_due) / period : 0;
  u128 scaled = static_cast<u128>(rent_fee.units) * penalty_rate;
  u128 k = payment.periods_late;
  if (k != 0 && scaled > ~u128{0} / k)
    throw Error(ErrorCode::kOverflow, "penalty overflows");
  u128 penalty = scaled * k / kBasisPointScale;
  if (penalty > UINT64_MAX) throw Error(ErrorCode::kOverflow, "penalty overflows");
  payment.penalty = Funds{static_cast<std::uint64_t>(penalty)};
  return payment;
}

Marketplace::Marketplace(Ledger& ledger, registry::Registry& registry)
    : ledger_(ledger), registry_(registry) {}

std::string Marketplace::create_parking_lot(const Address& landlord,
                                            const std::string& landlord_contract,
                                            std::uint32_t stall_count,
                                            pricing::PolicyPtr policy,
                                            std::string location) {
  if (!registry_.in_force(landlord_contract))
    throw Error(ErrorCode::kInactiveContract,
                "no landlord contract in force: " + landlord_contract);
  if (registry_.landlord_contract(landlord_contract).landlord != landlord)
    throw Error(ErrorCode::kUnauthorized,
                landlord_contract + " belongs to another landlord");
  if (stall_count == 0)
    throw Error(ErrorCode::kInvalidTerms, "a lot needs at least one stall");
  if (!policy) throw Error(ErrorCode::kInvalidTerms, "missing payment policy");

  std::string id = "lot:" + std::to_string(next_lot_++);
  ParkingLot lot;
  lot.id = id;
  lot.owner = landlord;
  lot.policy = std::move(policy);
  lot.landlord_contract = landlord_contract;
  lot.location = std::move(location);
  for (StallId s = 0; s < stall_count; ++s)
    lot.stalls.emplace(s, StallState{s, id, std::nullopt, false});
  ledger_.record("LOT_CREATED", {{"lot", id},
                                 {"landlord", landlord.hex()},
                                 {"landlord_contract", landlord_contract},
                                 {"stalls", stall_count},
                                 {"policy", lot.policy->to_json()}});
  lots_.emplace(id, std::move(lot));
  return id;
}

void Marketplace::check_renting_terms(const RentingTerms& terms,
                                      const ParkingLot& lot) const {
  if (terms.stalls.empty())
    throw Error(ErrorCode::kInvalidTerms, "stall subset is empty");
  for (auto s : terms.stalls) {
    if (!lot.stalls.contains(s))
      throw Error(ErrorCode::kUnknownStall,
                  "stall " + std::to_string(s) + " is not in " + lot.id);
  }
  if (terms.period == 0)
    throw Error(ErrorCode::kInvalidTerms, "period must be positive");
  if (terms.landlord_share > kBasisPointScale)
    throw Error(ErrorCode::kInvalidTerms, "landlord_share above 10000 bp");
  settlement::check_shares({tax_rate_of(lot), 0, terms.landlord_share});
}

void Marketplace::check_disjoint(const ParkingLot& lot,
                                 const std::set<StallId>& stalls) const {
  for (const auto& contract_id : lot.renting_contracts) {
    const auto& contract = contracts_.at(contract_id);
    if (contract.status != RentingStatus::kActive) continue;
    for (auto s : stalls) {
      if (contract.terms.stalls.contains(s))
        throw Error(ErrorCode::kOverlap, "stall " + std::to_string(s) +
                                             " is rented under " + contract.id);
    }
  }
}

std::string Marketplace::request_tenancy(const Address& tenant,
                                         const std::string& lot_id,
                                         RentingTerms terms) {
  if (!ledger_.has_account(tenant)) throw Error(ErrorCode::kUnknownAddress, tenant.hex());
  const auto& lot = this->lot(lot_id);
  if (!registry_.in_force(lot.landlord_contract))
    throw Error(ErrorCode::kInactiveContract, lot_id + " is not operating");
  check_renting_terms(terms, lot);
  check_disjoint(lot, terms.stalls);

  std::string id = "tenancy-request:" + std::to_string(next_request_++);
  ledger_.record("TENANCY_REQUESTED",
                 {{"request", id},
                  {"lot", lot_id},
                  {"tenant", tenant.hex()},
                  {"stalls", stalls_json(terms.stalls)},
                  {"rent_fee", terms.rent_fee.units},
                  {"period", terms.period},
                  {"landlord_share", terms.landlord_share},
                  {"penalty_rate", terms.penalty_rate}});
  requests_.emplace(id, TenancyRequest{id, lot_id, tenant, std::move(terms)});
  return id;
}

std::string Marketplace::approve_tenancy(const Address& landlord,
                                         const std::string& request_id) {
  auto rit = requests_.find(request_id);
  if (rit == requests_.end()) throw Error(ErrorCode::kNotFound, request_id);
  auto& request = rit->second;
  auto& lot = lot_mut(request.lot);
  if (lot.owner != landlord)
    throw Error(ErrorCode::kUnauthorized, "only the lot owner approves tenancies");
  if (request.status != registry::RequestStatus::kPending)
    throw Error(ErrorCode::kNotPending, request_id + " is already decided");
  if (!registry_.in_force(lot.landlord_contract))
    throw Error(ErrorCode::kInactiveContract, lot.id + " is not operating");
  check_renting_terms(request.terms, lot);
  try {
    check_disjoint(lot, request.terms.stalls);
  } catch (const Error& e) {
    throw Error(ErrorCode::kStale, request_id + ": " + e.what());
  }
  for (auto s : request.terms.stalls) {
    if (lot.active_sessions.contains(s))
      throw Error(ErrorCode::kStallBusy,
                  "stall " + std::to_string(s) + " has an active session");
  }

  std::string contract_id = "renting:" + std::to_string(next_contract_++);
  std::string tenant_id = "tenant:" + std::to_string(next_tenant_++);

  Tenant tenant;
  tenant.id = tenant_id;
  tenant.owner = request.tenant;
  tenant.policy = request.terms.policy ? request.terms.policy : lot.policy;
  tenant.lot = lot.id;
  tenant.renting_contract = contract_id;

  RentingContract contract{contract_id, lot.id, tenant_id, request.tenant,
                           request.terms, ledger_.now() + request.terms.period,
                           RentingStatus::kActive, Funds{}, Funds{}};
  for (auto s : contract.terms.stalls) lot.stalls.at(s).controller = tenant_id;
  lot.renting_contracts.insert(contract_id);
  request.status = registry::RequestStatus::kApproved;

  ledger_.record("TENANCY_APPROVED", {{"request", request_id},
                                      {"contract", contract_id},
                                      {"tenant_provider", tenant_id},
                                      {"lot", lot.id},
                                      {"stalls", stalls_json(contract.terms.stalls)},
                                      {"next_due", contract.next_due}});
  tenants_.emplace(tenant_id, std::move(tenant));
  contracts_.emplace(contract_id, std::move(contract));
  return contract_id;
}

void Marketplace::reject_tenancy(const Address& landlord, const std::string& request_id) {
  auto rit = requests_.find(request_id);
  if (rit == requests_.end()) throw Error(ErrorCode::kNotFound, request_id);
  auto& request = rit->second;
  if (lot(request.lot).owner != landlord)
    throw Error(ErrorCode::kUnauthorized, "only the lot owner rejects tenancies");
  if (request.status != registry::RequestStatus::kPending)
    throw Error(ErrorCode::kNotPending, request_id + " is already decided");
  request.status = registry::RequestStatus::kRejected;
  ledger_.record("TENANCY_REJECTED", {{"request", request_id}});
}

void Marketplace::terminate_tenancy(const Address& caller,
                                    const std::string& contract_id) {
  auto cit = contracts_.find(contract_id);
  if (cit == contracts_.end()) throw Error(ErrorCode::kNotFound, contract_id);
  auto& contract = cit->second;
  auto& lot = lot_mut(contract.lot);
  if (caller != contract.tenant && caller != lot.owner)
    throw Error(ErrorCode::kUnauthorized, "only the contract parties may terminate");
  if (contract.status != RentingStatus::kActive)
    throw Error(ErrorCode::kTerminated, contract_id + " already terminated");
  auto& tenant = tenants_.at(contract.tenant_provider);
  if (!tenant.active_sessions.empty())
    throw Error(ErrorCode::kActiveSessions,
                tenant.id + " still has parked cars");
  for (auto s : contract.terms.stalls) lot.stalls.at(s).controller = lot.id;
  contract.status = RentingStatus::kTerminated;
  tenant.active = false;
  ledger_.record("TENANCY_TERMINATED", {{"contract", contract_id},
                                        {"by", caller.hex()}});
}

RentPayment Marketplace::pay_rent(const Address& tenant, const std::string& contract_id) {
  auto cit = contracts_.find(contract_id);
  if (cit == contracts_.end()) throw Error(ErrorCode::kNotFound, contract_id);
  auto& contract = cit->second;
  if (contract.tenant != tenant)
    throw Error(ErrorCode::kUnauthorized, "only the tenant pays rent");
  if (contract.status != RentingStatus::kActive)
    throw Error(ErrorCode::kTerminated, contract_id + " is terminated");
  const auto& landlord = lot(contract.lot).owner;
  auto payment = rent_due(contract.terms.rent_fee, contract.terms.penalty_rate,
                          contract.terms.period, contract.next_due, ledger_.now());
  Posting posting{tenant, landlord, payment.total()};
  ledger_.post("RENT_PAYMENT",
               {{"contract", contract_id},
                {"rent", payment.rent.units},
                {"penalty", payment.penalty.units},
                {"periods_late", payment.periods_late},
                {"due", payment.paid_for_due}},
               {&posting, 1});
  contract.next_due += contract.terms.period;
  contract.rent_paid += payment.rent;
  contract.penalties_paid += payment.penalty;
  return payment;
}

void Marketplace::set_payment_policy(const Address& caller, const std::string& provider_id,
                                     pricing::PolicyPtr policy) {
  auto& provider = provider_mut(provider_id);
  if (provider.owner != caller)
    throw Error(ErrorCode::kUnauthorized, "only the provider owner sets policy");
  if (auto it = tenants_.find(provider_id); it != tenants_.end() && !it->second.active)
    throw Error(ErrorCode::kTerminated, provider_id + " no longer rents stalls");
  if (!policy) throw Error(ErrorCode::kInvalidTerms, "missing payment policy");
  provider.policy = std::move(policy);
  ledger_.record("POLICY_SET", {{"provider", provider_id},
                                {"policy", provider.policy->to_json()}});
}

std::string Marketplace::register_service_provider(const Address& caller,
                                                   const std::string& provider_id,
                                                   const Address& sp,
                                                   BasisPoints share) {
  auto& provider = provider_mut(provider_id);
  if (provider.owner != caller)
    throw Error(ErrorCode::kUnauthorized,
                "only the provider owner registers service providers");
  if (!ledger_.has_account(sp)) throw Error(ErrorCode::kUnknownAddress, sp.hex());
  auto shares = shares_for(provider_id, std::nullopt);
  shares.service = share;
  settlement::check_shares(shares);

  std::string id = "sp:" + std::to_string(next_sp_++);
  provider.service_providers.emplace(id, ServiceProvider{id, sp, share});
  ledger_.record("SERVICE_PROVIDER_REGISTERED", {{"provider", provider_id},
                                                 {"service_provider", id},
                                                 {"account", sp.hex()},
                                                 {"share", share}});
  return id;
}

EventRecord Marketplace::observe_occupancy(const Address& caller,
                                           const std::string& lot_id, StallId stall,
                                           const std::optional<std::string>& plate) {
  auto& lot = lot_mut(lot_id);
  if (lot.owner != caller)
    throw Error(ErrorCode::kUnauthorized, "occupancy is reported by the lot");
  auto sit = lot.stalls.find(stall);
  if (sit == lot.stalls.end())
    throw Error(ErrorCode::kUnknownStall, "stall " + std::to_string(stall));
  auto& state = sit->second;
  state.occupied_by = plate;

  const auto& controller = provider(state.controller);
  auto session = controller.active_sessions.find(stall);
  std::string kind;
  if (session == controller.active_sessions.end())
    kind = plate ? "OCCUPANCY_VIOLATION" : "OCCUPANCY_OK";
  else
    kind = plate == session->second.plate ? "OCCUPANCY_OK" : "OCCUPANCY_MISMATCH";

  Json payload = {{"lot", lot_id}, {"stall", stall}, {"controller", state.controller}};
  payload["plate"] = plate ? Json(*plate) : Json(nullptr);
  if (session != controller.active_sessions.end()) {
    payload["expected_plate"] = session->second.plate;
    payload["channel"] = to_hex(session->second.channel);
  }
  return ledger_.record(std::move(kind), std::move(payload));
}

const ProviderState& Marketplace::provider(const std::string& id) const {
  if (auto it = lots_.find(id); it != lots_.end()) return it->second;
  if (auto it = tenants_.find(id); it != tenants_.end()) return it->second;
  throw Error(ErrorCode::kNotFound, id);
}

ProviderState& Marketplace::provider_mut(const std::string& id) {
  return const_cast<ProviderState&>(std::as_const(*this).provider(id));
}

bool Marketplace::is_tenant(const std::string& provider_id) const {
  return tenants_.contains(provider_id);
}

const ParkingLot& Marketplace::lot(const std::string& id) const {
  auto it = lots_.find(id);
  if (it == lots_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

ParkingLot& Marketplace::lot_mut(const std::string& id) {
  auto it = lots_.find(id);
  if (it == lots_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const Tenant& Marketplace::tenant(const std::string& id) const {
  auto it = tenants_.find(id);
  if (it == tenants_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const RentingContract& Marketplace::renting_contract(const std::string& id) const {
  auto it = contracts_.find(id);
  if (it == contracts_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const TenancyRequest& Marketplace::tenancy_request(const std::string& id) const {
  auto it = requests_.find(id);
  if (it == requests_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const ParkingLot& Marketplace::lot_of(const std::string& provider_id) const {
  if (auto it = tenants_.find(provider_id); it != tenants_.end())
    return lot(it->second.lot);
  return lot(provider_id);
}

BasisPoints Marketplace::tax_rate_of(const ParkingLot& lot) const {
  return registry_.landlord_contract(lot.landlord_contract).terms.tax_rate;
}

void Marketplace::check_stall_available(const std::string& provider_id, StallId stall) {
  const auto& owner = provider(provider_id);
  if (auto it = tenants_.find(provider_id); it != tenants_.end() && !it->second.active)
    throw Error(ErrorCode::kTerminated, provider_id + " no longer rents stalls");
  const auto& lot = lot_of(provider_id);
  if (!registry_.in_force(lot.landlord_contract))
    throw Error(ErrorCode::kInactiveContract, lot.id + " is not operating");
  auto sit = lot.stalls.find(stall);
  if (sit == lot.stalls.end())
    throw Error(ErrorCode::kUnknownStall, "stall " + std::to_string(stall));
  if (sit->second.controller != provider_id)
    throw Error(ErrorCode::kForeignStall, "stall " + std::to_string(stall) +
                                              " is controlled by " +
                                              sit->second.controller);
  if (owner.active_sessions.contains(stall))
    throw Error(ErrorCode::kStallBusy, "stall " + std::to_string(stall) + " is taken");
}

settlement::Shares Marketplace::shares_for(const std::string& provider_id,
                                           const std::optional<std::string>& sp) const {
  settlement::Shares shares;
  shares.tax = tax_rate_of(lot_of(provider_id));
  if (auto it = tenants_.find(provider_id); it != tenants_.end())
    shares.landlord = contracts_.at(it->second.renting_contract).terms.landlord_share;
  if (sp) shares.service = service_provider(provider_id, *sp).share;
  return shares;
}

const ServiceProvider& Marketplace::service_provider(const std::string& provider_id,
                                                     const std::string& sp) const {
  const auto& sps = provider(provider_id).service_providers;
  auto it = sps.find(sp);
  if (it == sps.end())
    throw Error(ErrorCode::kNotFound, sp + " is not registered with " + provider_id);
  return it->second;
}

void Marketplace::begin_session(const std::string& provider_id, StallId stall,
                                ActiveSession session) {
  auto& owner = provider_mut(provider_id);
  if (!owner.active_sessions.emplace(stall, std::move(session)).second)
    throw Error(ErrorCode::kStallBusy, "stall " + std::to_string(stall) + " is taken");
}

void Marketplace::end_session(const std::string& provider_id, StallId stall) {
  provider_mut(provider_id).active_sessions.erase(stall);
}

RentingTerms Marketplace::preview_amendment(const std::string& contract_id,
                                            const Json& changes) const {
  const auto& contract = renting_contract(contract_id);
  auto terms = with_changes(contract.terms, changes);
  const auto& lot = this->lot(contract.lot);
  check_renting_terms(terms, lot);
  const auto& tenant = tenants_.at(contract.tenant_provider);
  for (const auto& [_, sp] : tenant.service_providers)
    settlement::check_shares({tax_rate_of(lot), sp.share, terms.landlord_share});
  return terms;
}

void Marketplace::apply_renting_changes(const std::string& contract_id,
                                        const RentingTerms& terms) {
  auto cit = contracts_.find(contract_id);
  if (cit == contracts_.end()) throw Error(ErrorCode::kNotFound, contract_id);
  cit->second.terms = terms;
}

void Marketplace::check_tax_rate(const std::string& landlord_contract,
                                 BasisPoints tax_rate) const {
  for (const auto& [_, lot] : lots_) {
    if (lot.landlord_contract != landlord_contract) continue;
    for (const auto& [__, sp] : lot.service_providers)
      settlement::check_shares({tax_rate, sp.share, 0});
    for (const auto& contract_id : lot.renting_contracts) {
      const auto& contract = contracts_.at(contract_id);
      if (contract.status != RentingStatus::kActive) continue;
      settlement::check_shares({tax_rate, 0, contract.terms.landlord_share});
      for (const auto& [__, sp] : tenants_.at(contract.tenant_provider).service_providers)
        settlement::check_shares({tax_rate, sp.share, contract.terms.landlord_share});
    }
  }
}

}  // namespace parkchain::providers
