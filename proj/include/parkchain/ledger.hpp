#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "parkchain/sigchain.hpp"
#include "parkchain/types.hpp"

namespace parkchain {

using Json = nlohmann::json;

/// Integers built in code are stored signed; parsed ones unsigned.
inline bool is_non_negative_integer(const Json& value) {
  return value.is_number_unsigned() ||
         (value.is_number_integer() && value.get<std::int64_t>() >= 0);
}

/// Funds held by the ledger on behalf of a contract (a payment channel).
struct EscrowRef {
  Hash32 id{};
  friend auto operator<=>(const EscrowRef&, const EscrowRef&) = default;
};

using Holder = std::variant<Address, EscrowRef>;

std::string holder_to_string(const Holder& holder);

struct Posting {
  Holder from;
  Holder to;
  Funds amount;
};

struct EventRecord {
  std::uint64_t index = 0;
  TimePoint time = 0;
  std::string kind;
  Json payload;
};

/// One line of the event log: {"index":..,"time":..,"kind":..,"payload":..}.
std::string to_jsonl(const EventRecord& event);

/// Immutable copy of the ledger's money state; safe to hand to other threads.
struct LedgerSnapshot {
  TimePoint now = 0;
  std::uint64_t event_count = 0;
  Funds genesis_total;
  std::map<Address, Funds> balances;
  std::map<EscrowRef, Funds> escrow;

  Funds total_balances() const;
  Funds total_escrow() const;
};

class Ledger {
 public:
  /// Accounts with a non-zero opening balance may only be created before the
  /// genesis is closed.
  Address create_account(std::uint64_t seed, Funds initial_balance);
  void close_genesis() { genesis_open_ = false; }
  bool genesis_open() const { return genesis_open_; }

  EventRecord transfer(const Address& from, const Address& to, Funds amount);

  /// Applies all postings atomically as a single transaction and appends one
  /// event. The payload receives a "transfers" array describing the postings.
  EventRecord post(std::string kind, Json payload,
                   std::span<const Posting> postings);

  /// Appends an event that moves no funds.
  EventRecord record(std::string kind, Json payload);

  TimePoint advance_time(Duration delta);
  TimePoint now() const { return now_; }

  std::vector<EventRecord> events_since(std::uint64_t index) const;
  const std::vector<EventRecord>& events() const { return events_; }
  std::uint64_t next_event_index() const { return events_.size(); }

  bool has_account(const Address& address) const;
  Funds balance(const Address& address) const;
  Funds escrowed(const EscrowRef& escrow) const;
  const sigchain::PublicKey& public_key(const Address& address) const;

  Funds genesis_total() const { return genesis_total_; }
  LedgerSnapshot snapshot() const;

 private:
  struct Account {
    sigchain::PublicKey public_key;
    Funds balance;
  };

  const Account& account(const Address& address) const;

  std::map<Address, Account> accounts_;
  std::map<std::uint64_t, Address> seeds_;
  std::map<EscrowRef, Funds> escrow_;
  std::vector<EventRecord> events_;
  TimePoint now_ = 0;
  Funds genesis_total_;
  bool genesis_open_ = true;
};

}  // namespace parkchain
