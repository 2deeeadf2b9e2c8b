#include "parkchain/ledger.hpp"

namespace parkchain {

std::string holder_to_string(const Holder& holder) {
  if (const auto* address = std::get_if<Address>(&holder))
    return address->hex();
  return "escrow:" + to_hex(std::get<EscrowRef>(holder).id);
}

std::string to_jsonl(const EventRecord& event) {
  std::string line = "{\"index\":" + std::to_string(event.index) +
                     ",\"time\":" + std::to_string(event.time) +
                     ",\"kind\":" + Json(event.kind).dump() +
                     ",\"payload\":" + event.payload.dump() + "}";
  return line;
}

Funds LedgerSnapshot::total_balances() const {
  Funds sum;
  for (const auto& [_, amount] : balances) sum += amount;
  return sum;
}

Funds LedgerSnapshot::total_escrow() const {
  Funds sum;
  for (const auto& [_, amount] : escrow) sum += amount;
  return sum;
}

Address Ledger::create_account(std::uint64_t seed, Funds initial_balance) {
  if (seeds_.contains(seed))
    throw Error(ErrorCode::kDuplicateSeed,
                "seed " + std::to_string(seed) + " already used");
  if (!genesis_open_ && initial_balance.units > 0)
    throw Error(ErrorCode::kMintAfterGenesis,
                "accounts created after genesis must start empty");
  auto keys = sigchain::derive_keypair(seed);
  auto address = sigchain::address_of(keys.public_key);
  Funds new_total = genesis_total_ + initial_balance;
  seeds_.emplace(seed, address);
  accounts_.emplace(address, Account{keys.public_key, initial_balance});
  genesis_total_ = new_total;
  return address;
}

const Ledger::Account& Ledger::account(const Address& address) const {
  auto it = accounts_.find(address);
  if (it == accounts_.end())
    throw Error(ErrorCode::kUnknownAddress, address.hex());
  return it->second;
}

bool Ledger::has_account(const Address& address) const {
  return accounts_.contains(address);
}

Funds Ledger::balance(const Address& address) const {
  return account(address).balance;
}

Funds Ledger::escrowed(const EscrowRef& escrow) const {
  auto it = escrow_.find(escrow);
  return it == escrow_.end() ? Funds{} : it->second;
}

const sigchain::PublicKey& Ledger::public_key(const Address& address) const {
  return account(address).public_key;
}

EventRecord Ledger::transfer(const Address& from, const Address& to,
                             Funds amount) {
  Posting posting{from, to, amount};
  return post("TRANSFER", Json::object(), {&posting, 1});
}

EventRecord Ledger::post(std::string kind, Json payload,
                         std::span<const Posting> postings) {
  // Stage every touched holder, apply sequentially, commit only on success.
  std::map<Address, Funds> staged_accounts;
  std::map<EscrowRef, Funds> staged_escrow;
  auto slot = [&](const Holder& holder) -> Funds& {
    if (const auto* address = std::get_if<Address>(&holder)) {
      auto it = staged_accounts.find(*address);
      if (it == staged_accounts.end())
        it = staged_accounts.emplace(*address, account(*address).balance).first;
      return it->second;
    }
    const auto& ref = std::get<EscrowRef>(holder);
    auto it = staged_escrow.find(ref);
    if (it == staged_escrow.end())
      it = staged_escrow.emplace(ref, escrowed(ref)).first;
    return it->second;
  };

  Json transfers = Json::array();
  for (const auto& p : postings) {
    Funds& source = slot(p.from);
    if (source < p.amount)
      throw Error(ErrorCode::kInsufficientFunds,
                  holder_to_string(p.from) + " holds " +
                      std::to_string(source.units) + ", needs " +
                      std::to_string(p.amount.units));
    source -= p.amount;
    Funds& target = slot(p.to);
    target += p.amount;
    transfers.push_back({{"from", holder_to_string(p.from)},
                         {"to", holder_to_string(p.to)},
                         {"amount", p.amount.units}});
  }

  for (const auto& [address, amount] : staged_accounts)
    accounts_.at(address).balance = amount;
  for (const auto& [ref, amount] : staged_escrow) {
    if (amount.units == 0)
      escrow_.erase(ref);
    else
      escrow_[ref] = amount;
  }
  genesis_open_ = false;
  payload["transfers"] = std::move(transfers);
  return record(std::move(kind), std::move(payload));
}

EventRecord Ledger::record(std::string kind, Json payload) {
  EventRecord event{events_.size(), now_, std::move(kind), std::move(payload)};
  events_.push_back(event);
  return event;
}

TimePoint Ledger::advance_time(Duration delta) {
  if (delta > UINT64_MAX - now_)
    throw Error(ErrorCode::kOverflow, "clock overflow");
  now_ += delta;
  return now_;
}

std::vector<EventRecord> Ledger::events_since(std::uint64_t index) const {
  if (index >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(index), events_.end()};
}

LedgerSnapshot Ledger::snapshot() const {
  LedgerSnapshot snap;
  snap.now = now_;
  snap.event_count = events_.size();
  snap.genesis_total = genesis_total_;
  for (const auto& [address, acct] : accounts_)
    snap.balances.emplace(address, acct.balance);
  snap.escrow = escrow_;
  return snap;
}

}  // namespace parkchain
