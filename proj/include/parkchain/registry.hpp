#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parkchain/ledger.hpp"
#include "parkchain/sigchain.hpp"

namespace parkchain::registry {

enum class ContractStatus { kActive, kExpired, kRevoked };
enum class RequestStatus { kPending, kApproved, kRejected };
enum class AmendmentStatus { kProposed, kAccepted, kRejected };

std::string_view to_string(ContractStatus status);
std::string_view to_string(RequestStatus status);
std::string_view to_string(AmendmentStatus status);

/// Terms negotiated between the administrator and a landlord.
struct LandlordTerms {
  BasisPoints tax_rate = 0;
  std::string land_info;
  TimePoint valid_from = 0;
  TimePoint valid_until = 0;
};

/// Throws kInvalidTerms unless tax_rate <= 10000 and valid_from < valid_until.
void validate(const LandlordTerms& terms);

/// Whole-field replacement; recognised keys are tax_rate, land_info,
/// valid_from and valid_until. The result is validated.
LandlordTerms with_changes(LandlordTerms terms, const Json& changes);

struct LandlordContract {
  std::string id;
  Address landlord;
  LandlordTerms terms;
  ContractStatus status = ContractStatus::kActive;
};

struct RegistrationRequest {
  std::string id;
  Address requester;
  LandlordTerms terms;
  RequestStatus status = RequestStatus::kPending;
  std::optional<std::string> contract;
};

struct ParkedAt {
  std::string provider;
  std::uint32_t stall = 0;
  sigchain::ChannelId channel{};
};

struct CarRecord {
  std::string id;
  std::string plate;
  Address owner;
  // Never changed by any operation; there are no rating rules to apply.
  std::int64_t rating = 0;
  std::optional<ParkedAt> parked;
  std::vector<sigchain::ChannelId> history;
};

/// A pending change to one of the two bilateral contract kinds: a landlord
/// contract (administrator and landlord) or a renting contract (landlord and
/// tenant).
struct Amendment {
  std::string id;
  std::string contract;
  Address proposer;
  Address counterparty;
  Json changes;
  AmendmentStatus status = AmendmentStatus::kProposed;
};

/// The parking system contract: landlord registration, car records and the
/// amendment book.
class Registry {
 public:
  Registry(Ledger& ledger, Address administrator);

  const Address& administrator() const { return administrator_; }

  std::string request_landlord_registration(const Address& landlord,
                                            const LandlordTerms& terms);

  std::optional<LandlordContract> decide_registration(const Address& caller,
                                                      const std::string& request,
                                                      bool approve);

  std::string register_car(const Address& owner, const std::string& plate);

  /// Active, started and not yet past valid_until. Expiry is detected here
  /// against the ledger clock and recorded on the contract.
  bool in_force(const std::string& contract_id);

  const LandlordContract& landlord_contract(const std::string& id) const;
  const RegistrationRequest& request(const std::string& id) const;
  const CarRecord& car(const std::string& id) const;
  CarRecord& car(const std::string& id);
  std::optional<std::string> car_by_plate(const std::string& plate) const;
  const std::map<std::string, CarRecord>& cars() const { return cars_; }
  const std::map<std::string, LandlordContract>& landlord_contracts() const {
    return contracts_;
  }

  /// Validation of the counterparties and the change set is the caller's job.
  std::string add_amendment(Amendment amendment);
  const Amendment& amendment(const std::string& id) const;
  /// Marks a proposed amendment terminal; throws if it is not proposed.
  void close_amendment(const std::string& id, bool accepted);

  void apply_landlord_changes(const std::string& contract_id,
                              const LandlordTerms& terms);

 private:
  Ledger& ledger_;
  Address administrator_;
  std::map<std::string, RegistrationRequest> requests_;
  std::map<std::string, LandlordContract> contracts_;
  std::map<std::string, CarRecord> cars_;
  std::map<std::string, std::string> plates_;
  std::map<std::string, Amendment> amendments_;
  std::uint64_t next_request_ = 1;
  std::uint64_t next_contract_ = 1;
  std::uint64_t next_car_ = 1;
  std::uint64_t next_amendment_ = 1;
};

Json to_json(const LandlordTerms& terms);

}  // namespace parkchain::registry
