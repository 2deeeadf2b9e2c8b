#pragma once

#include <map>
#include <optional>
#include <string>

#include "parkchain/ledger.hpp"
#include "parkchain/pricing.hpp"
#include "parkchain/settlement.hpp"
#include "parkchain/sigchain.hpp"

namespace parkchain::payments {

using sigchain::ChannelId;

enum class ChannelStatus { kOpen, kSettled, kRefunded };
std::string_view to_string(ChannelStatus status);

struct ChannelState {
  ChannelId id{};
  Address payer;
  std::string payee;
  Address payee_owner;
  std::string car;
  std::uint32_t stall = 0;
  Funds locked;
  Funds quoted;
  TimePoint opened_at = 0;
  TimePoint park_until = 0;
  /// park_until + grace; the payer may reclaim the escrow from here on.
  TimePoint expiry = 0;
  /// Captured when the channel opens; later policy changes do not apply.
  pricing::PolicyPtr policy;
  std::optional<std::string> service_provider;
  ChannelStatus status = ChannelStatus::kOpen;
  std::optional<settlement::Breakdown> settlement;
};

struct OpenRequest {
  Address payer;
  std::string payee;
  Address payee_owner;
  std::string car;
  std::uint32_t stall = 0;
  TimePoint until = 0;
  Funds deposit;
  pricing::PolicyPtr policy;
  std::optional<std::string> service_provider;
};

/// Accounts that receive each slice of a settlement.
struct Recipients {
  Address administrator;
  std::optional<Address> service_provider;
  std::optional<Address> landlord;
};

/// SHA-256 over payer, length-prefixed payee id, opening time and the index
/// of the opening ledger event.
ChannelId derive_channel_id(const Address& payer, const std::string& payee,
                            TimePoint opened_at, std::uint64_t event_index);

/// Escrow state machine for unidirectional payment channels. Each channel
/// touches the ledger exactly twice: once to lock the deposit and once to pay
/// it out (settlement or timeout refund).
class ChannelBook {
 public:
  ChannelBook(Ledger& ledger, Duration grace) : ledger_(ledger), grace_(grace) {}

  Duration grace() const { return grace_; }

  const ChannelState& open(const OpenRequest& request);

  settlement::Breakdown settle(const Address& caller, const sigchain::Voucher& voucher,
                               const settlement::Shares& shares,
                               const Recipients& recipients);

  Funds timeout_refund(const Address& caller, const ChannelId& channel);

  const ChannelState& channel(const ChannelId& id) const;
  const std::map<ChannelId, ChannelState>& channels() const { return channels_; }

 private:
  ChannelState& open_channel_mut(const ChannelId& id);

  Ledger& ledger_;
  Duration grace_;
  std::map<ChannelId, ChannelState> channels_;
};

/// Off-ledger voucher exchange for one channel. Nothing here touches the
/// ledger; only the final voucher reaches it through ChannelBook::settle.
struct OffchainSession {
  ChannelId channel{};
  sigchain::PublicKey payer_key;
  Funds locked;
  TimePoint opened_at = 0;
  TimePoint park_until = 0;
  pricing::PolicyPtr policy;

  Funds last_emitted;
  Funds last_accepted;
  std::optional<sigchain::Voucher> latest_emitted;
  std::optional<sigchain::Voucher> best_accepted;

  static OffchainSession for_channel(const ChannelState& state,
                                     const sigchain::PublicKey& payer_key);
};

/// Payer side: voucher for min(price over [opened_at, min(now, park_until)),
/// locked). Throws kChannelClosed unless `state` is open.
sigchain::Voucher next_voucher(OffchainSession& session, const ChannelState& state,
                               const sigchain::KeyPair& payer, TimePoint now);

/// Payee side: accepts only a correctly signed voucher for this channel whose
/// cumulative strictly exceeds the last accepted one and fits the escrow.
bool accept_voucher(OffchainSession& session, const sigchain::Voucher& voucher);

}  // namespace parkchain::payments
