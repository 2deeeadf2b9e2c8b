#include "parkchain/registry.hpp"

namespace parkchain::registry {
namespace {

std::uint64_t unsigned_field(const Json& changes, const std::string& key) {
  const auto& value = changes.at(key);
  if (!is_non_negative_integer(value))
    throw Error(ErrorCode::kInvalidTerms, key + " must be a non-negative integer");
  return value.get<std::uint64_t>();
}

}  // namespace

std::string_view to_string(ContractStatus status) {
  switch (status) {
    case ContractStatus::kActive: return "active";
    case ContractStatus::kExpired: return "expired";
    case ContractStatus::kRevoked: return "revoked";
  }
  return "?";
}

std::string_view to_string(RequestStatus status) {
  switch (status) {
    case RequestStatus::kPending: return "pending";
    case RequestStatus::kApproved: return "approved";
    case RequestStatus::kRejected: return "rejected";
  }
  return "?";
}

std::string_view to_string(AmendmentStatus status) {
  switch (status) {
    case AmendmentStatus::kProposed: return "proposed";
    case AmendmentStatus::kAccepted: return "accepted";
    case AmendmentStatus::kRejected: return "rejected";
  }
  return "?";
}

void validate(const LandlordTerms& terms) {
  if (terms.tax_rate > kBasisPointScale)
    throw Error(ErrorCode::kInvalidTerms, "tax_rate above 10000 bp");
  if (terms.valid_from >= terms.valid_until)
    throw Error(ErrorCode::kInvalidTerms, "valid_from must precede valid_until");
}

LandlordTerms with_changes(LandlordTerms terms, const Json& changes) {
  if (!changes.is_object() || changes.empty())
    throw Error(ErrorCode::kInvalidTerms, "changes must be a non-empty object");
  for (const auto& [key, value] : changes.items()) {
    if (key == "tax_rate") {
      auto rate = unsigned_field(changes, key);
      if (rate > kBasisPointScale)
        throw Error(ErrorCode::kInvalidTerms, "tax_rate above 10000 bp");
      terms.tax_rate = static_cast<BasisPoints>(rate);
    } else if (key == "valid_from") {
      terms.valid_from = unsigned_field(changes, key);
    } else if (key == "valid_until") {
      terms.valid_until = unsigned_field(changes, key);
    } else if (key == "land_info") {
      if (!value.is_string())
        throw Error(ErrorCode::kInvalidTerms, "land_info must be a string");
      terms.land_info = value.get<std::string>();
    } else {
      throw Error(ErrorCode::kInvalidTerms,
                  "landlord contracts have no field '" + key + "'");
    }
  }
  validate(terms);
  return terms;
}

Json to_json(const LandlordTerms& terms) {
  return {{"tax_rate", terms.tax_rate},
          {"land_info", terms.land_info},
          {"valid_from", terms.valid_from},
          {"valid_until", terms.valid_until}};
}

Registry::Registry(Ledger& ledger, Address administrator)
    : ledger_(ledger), administrator_(administrator) {
  if (!ledger_.has_account(administrator_))
    throw Error(ErrorCode::kUnknownAddress, "administrator has no account");
}

std::string Registry::request_landlord_registration(const Address& landlord,
                                                    const LandlordTerms& terms) {
  if (!ledger_.has_account(landlord))
    throw Error(ErrorCode::kUnknownAddress, landlord.hex());
  validate(terms);
  for (const auto& [_, req] : requests_) {
    if (req.requester == landlord && req.status == RequestStatus::kPending)
      throw Error(ErrorCode::kDuplicateRequest,
                  "landlord already has pending request " + req.id);
  }
  std::string id = "request:" + std::to_string(next_request_++);
  requests_.emplace(id, RegistrationRequest{id, landlord, terms,
                                            RequestStatus::kPending, std::nullopt});
  ledger_.record("REQUEST", {{"request", id},
                             {"landlord", landlord.hex()},
                             {"terms", to_json(terms)}});
  return id;
}

std::optional<LandlordContract> Registry::decide_registration(
    const Address& caller, const std::string& request_id, bool approve) {
  if (caller != administrator_)
    throw Error(ErrorCode::kUnauthorized,
                "only the administrator decides registrations");
  auto it = requests_.find(request_id);
  if (it == requests_.end()) throw Error(ErrorCode::kNotFound, request_id);
  auto& req = it->second;
  if (req.status != RequestStatus::kPending)
    throw Error(ErrorCode::kNotPending, request_id + " is already decided");

  std::optional<LandlordContract> result;
  if (approve) {
    std::string id = "landlord-contract:" + std::to_string(next_contract_++);
    LandlordContract contract{id, req.requester, req.terms,
                              ContractStatus::kActive};
    contracts_.emplace(id, contract);
    req.status = RequestStatus::kApproved;
    req.contract = id;
    result = contract;
  } else {
    req.status = RequestStatus::kRejected;
  }
  Json payload = {{"request", request_id}, {"approved", approve}};
  if (result) payload["contract"] = result->id;
  ledger_.record("REGISTRATION_DECIDED", std::move(payload));
  return result;
}

std::string Registry::register_car(const Address& owner, const std::string& plate) {
  if (plate.empty()) throw Error(ErrorCode::kEmptyPlate, "plate must not be empty");
  if (!ledger_.has_account(owner)) throw Error(ErrorCode::kUnknownAddress, owner.hex());
  if (plates_.contains(plate))
    throw Error(ErrorCode::kDuplicatePlate, plate + " is already registered");
  std::string id = "car:" + std::to_string(next_car_++);
  CarRecord record;
  record.id = id;
  record.plate = plate;
  record.owner = owner;
  cars_.emplace(id, std::move(record));
  plates_.emplace(plate, id);
  ledger_.record("CAR_REGISTERED",
                 {{"car", id}, {"plate", plate}, {"owner", owner.hex()}});
  return id;
}

bool Registry::in_force(const std::string& contract_id) {
  auto it = contracts_.find(contract_id);
  if (it == contracts_.end()) return false;
  auto& contract = it->second;
  if (contract.status == ContractStatus::kActive &&
      ledger_.now() >= contract.terms.valid_until)
    contract.status = ContractStatus::kExpired;
  return contract.status == ContractStatus::kActive &&
         ledger_.now() >= contract.terms.valid_from;
}

const LandlordContract& Registry::landlord_contract(const std::string& id) const {
  auto it = contracts_.find(id);
  if (it == contracts_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const RegistrationRequest& Registry::request(const std::string& id) const {
  auto it = requests_.find(id);
  if (it == requests_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

const CarRecord& Registry::car(const std::string& id) const {
  auto it = cars_.find(id);
  if (it == cars_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

CarRecord& Registry::car(const std::string& id) {
  auto it = cars_.find(id);
  if (it == cars_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

std::optional<std::string> Registry::car_by_plate(const std::string& plate) const {
  auto it = plates_.find(plate);
  if (it == plates_.end()) return std::nullopt;
  return it->second;
}

std::string Registry::add_amendment(Amendment amendment) {
  amendment.id = "amendment:" + std::to_string(next_amendment_++);
  amendment.status = AmendmentStatus::kProposed;
  auto id = amendment.id;
  ledger_.record("AMENDMENT_PROPOSED", {{"amendment", id},
                                        {"contract", amendment.contract},
                                        {"proposer", amendment.proposer.hex()},
                                        {"changes", amendment.changes}});
  amendments_.emplace(id, std::move(amendment));
  return id;
}

const Amendment& Registry::amendment(const std::string& id) const {
  auto it = amendments_.find(id);
  if (it == amendments_.end()) throw Error(ErrorCode::kNotFound, id);
  return it->second;
}

void Registry::close_amendment(const std::string& id, bool accepted) {
  auto it = amendments_.find(id);
  if (it == amendments_.end()) throw Error(ErrorCode::kNotFound, id);
  if (it->second.status != AmendmentStatus::kProposed)
    throw Error(ErrorCode::kNotProposed, id + " is already resolved");
  it->second.status =
      accepted ? AmendmentStatus::kAccepted : AmendmentStatus::kRejected;
  ledger_.record("AMENDMENT_RESOLVED", {{"amendment", id},
                                        {"contract", it->second.contract},
                                        {"accepted", accepted}});
}

void Registry::apply_landlord_changes(const std::string& contract_id,
                                      const LandlordTerms& terms) {
  auto it = contracts_.find(contract_id);
  if (it == contracts_.end()) throw Error(ErrorCode::kNotFound, contract_id);
  validate(terms);
  it->second.terms = terms;
}

}  // namespace parkchain::registry
