#include "parkchain/engine.hpp"

namespace parkchain {
namespace {

constexpr std::string_view kLandlordContractPrefix = "landlord-contract:";
constexpr std::string_view kRentingContractPrefix = "renting:";

Address open_administrator(Ledger& ledger, std::uint64_t seed, Funds balance) {
  return ledger.create_account(seed, balance);
}

}  // namespace

Engine::Engine(std::uint64_t administrator_seed, Funds administrator_balance,
               EngineConfig config)
    : registry_(ledger_, open_administrator(ledger_, administrator_seed,
                                            administrator_balance)),
      marketplace_(ledger_, registry_),
      channels_(ledger_, config.grace) {}

TimePoint Engine::advance_to(TimePoint t) {
  if (t < ledger_.now())
    throw Error(ErrorCode::kInvalidInterval, "clock cannot move backwards");
  return ledger_.advance_time(t - ledger_.now());
}

std::string Engine::propose_amendment(const Address& party, const std::string& contract,
                                      const Json& changes) {
  registry::Amendment amendment;
  amendment.contract = contract;
  amendment.proposer = party;
  amendment.changes = changes;

  if (contract.starts_with(kLandlordContractPrefix)) {
    const auto& lc = registry_.landlord_contract(contract);
    const Address& admin = registry_.administrator();
    if (party != admin && party != lc.landlord)
      throw Error(ErrorCode::kUnauthorized, "not a party to " + contract);
    if (!registry_.in_force(contract))
      throw Error(ErrorCode::kInactiveContract, contract + " is not in force");
    auto terms = registry::with_changes(lc.terms, changes);
    marketplace_.check_tax_rate(contract, terms.tax_rate);
    amendment.counterparty = party == admin ? lc.landlord : admin;
  } else if (contract.starts_with(kRentingContractPrefix)) {
    const auto& rc = marketplace_.renting_contract(contract);
    const Address& landlord = marketplace_.lot(rc.lot).owner;
    if (party != landlord && party != rc.tenant)
      throw Error(ErrorCode::kUnauthorized, "not a party to " + contract);
    if (rc.status != providers::RentingStatus::kActive)
      throw Error(ErrorCode::kInactiveContract, contract + " is terminated");
    marketplace_.preview_amendment(contract, changes);
    amendment.counterparty = party == landlord ? rc.tenant : landlord;
  } else {
    throw Error(ErrorCode::kNotFound, "no amendable contract " + contract);
  }
  if (amendment.counterparty == party)
    throw Error(ErrorCode::kInvalidTerms, "contract parties coincide");
  return registry_.add_amendment(std::move(amendment));
}

bool Engine::resolve_amendment(const Address& counterparty, const std::string& id,
                               bool accept) {
  const auto& amendment = registry_.amendment(id);
  if (counterparty != amendment.counterparty)
    throw Error(ErrorCode::kUnauthorized,
                counterparty == amendment.proposer
                    ? "the proposer cannot resolve its own amendment"
                    : "not the counterparty of " + id);
  if (amendment.status != registry::AmendmentStatus::kProposed)
    throw Error(ErrorCode::kNotProposed, id + " is already resolved");
  if (!accept) {
    registry_.close_amendment(id, false);
    return false;
  }

  // Terms may have moved since the proposal; validate against current ones.
  const auto& contract = amendment.contract;
  if (contract.starts_with(kLandlordContractPrefix)) {
    if (!registry_.in_force(contract))
      throw Error(ErrorCode::kInactiveContract, contract + " is not in force");
    auto terms = registry::with_changes(registry_.landlord_contract(contract).terms,
                                        amendment.changes);
    marketplace_.check_tax_rate(contract, terms.tax_rate);
    registry_.apply_landlord_changes(contract, terms);
  } else {
    if (marketplace_.renting_contract(contract).status != providers::RentingStatus::kActive)
      throw Error(ErrorCode::kInactiveContract, contract + " is terminated");
    auto terms = marketplace_.preview_amendment(contract, amendment.changes);
    marketplace_.apply_renting_changes(contract, terms);
  }
  registry_.close_amendment(id, true);
  return true;
}

payments::ChannelId Engine::start_parking(const Address& caller, const std::string& car_id,
                                          const std::string& provider_id,
                                          providers::StallId stall, TimePoint until,
                                          Funds deposit,
                                          const std::optional<std::string>& sp) {
  const auto& car = registry_.car(car_id);
  if (car.owner != caller)
    throw Error(ErrorCode::kUnauthorized, "only the car owner starts parking");
  if (car.parked)
    throw Error(ErrorCode::kCarAlreadyParked, car_id + " is parked on " +
                                                  car.parked->provider);
  marketplace_.check_stall_available(provider_id, stall);
  const auto& provider = marketplace_.provider(provider_id);
  if (sp) marketplace_.service_provider(provider_id, *sp);

  payments::OpenRequest request;
  request.payer = caller;
  request.payee = provider_id;
  request.payee_owner = provider.owner;
  request.car = car_id;
  request.stall = stall;
  request.until = until;
  request.deposit = deposit;
  request.policy = provider.policy;
  request.service_provider = sp;
  const auto& state = channels_.open(request);

  marketplace_.begin_session(provider_id, stall, {state.id, car_id, car.plate});
  registry_.car(car_id).parked = registry::ParkedAt{provider_id, stall, state.id};
  sessions_.emplace(state.id, payments::OffchainSession::for_channel(
                                  state, ledger_.public_key(caller)));
  return state.id;
}

sigchain::Voucher Engine::next_voucher(const payments::ChannelId& channel,
                                       const sigchain::KeyPair& payer) {
  return next_voucher(channel, payer, ledger_.now());
}

sigchain::Voucher Engine::next_voucher(const payments::ChannelId& channel,
                                       const sigchain::KeyPair& payer, TimePoint now) {
  auto it = sessions_.find(channel);
  if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "channel " + to_hex(channel));
  return payments::next_voucher(it->second, channels_.channel(channel), payer, now);
}

bool Engine::accept_voucher(const payments::ChannelId& channel,
                            const sigchain::Voucher& voucher) {
  auto it = sessions_.find(channel);
  if (it == sessions_.end()) return false;
  if (channels_.channel(channel).status != payments::ChannelStatus::kOpen) return false;
  return payments::accept_voucher(it->second, voucher);
}

const payments::OffchainSession& Engine::session(const payments::ChannelId& channel) const {
  auto it = sessions_.find(channel);
  if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "channel " + to_hex(channel));
  return it->second;
}

void Engine::close_session(const payments::ChannelState& state) {
  marketplace_.end_session(state.payee, state.stall);
  auto& car = registry_.car(state.car);
  car.parked.reset();
  car.history.push_back(state.id);
}

settlement::Breakdown Engine::settle_channel(const Address& caller,
                                             const sigchain::Voucher& voucher) {
  const auto& state = channels_.channel(voucher.channel_id);
  payments::Recipients recipients;
  recipients.administrator = registry_.administrator();
  if (state.service_provider)
    recipients.service_provider =
        marketplace_.service_provider(state.payee, *state.service_provider).account;
  if (marketplace_.is_tenant(state.payee))
    recipients.landlord = marketplace_.lot_of(state.payee).owner;
  auto shares = marketplace_.shares_for(state.payee, state.service_provider);

  auto breakdown = channels_.settle(caller, voucher, shares, recipients);
  close_session(state);
  return breakdown;
}

Funds Engine::timeout_refund(const Address& caller, const payments::ChannelId& channel) {
  auto refunded = channels_.timeout_refund(caller, channel);
  close_session(channels_.channel(channel));
  return refunded;
}

}  // namespace parkchain
