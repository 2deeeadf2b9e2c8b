#include "parkchain/channels.hpp"

#include <algorithm>
#include <vector>

namespace parkchain::payments {
namespace {

void append_be64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

std::string_view to_string(ChannelStatus status) {
  switch (status) {
    case ChannelStatus::kOpen: return "open";
    case ChannelStatus::kSettled: return "settled";
    case ChannelStatus::kRefunded: return "refunded";
  }
  return "?";
}

ChannelId derive_channel_id(const Address& payer, const std::string& payee,
                            TimePoint opened_at, std::uint64_t event_index) {
  Bytes material(payer.bytes.begin(), payer.bytes.end());
  append_be64(material, payee.size());
  material.insert(material.end(), payee.begin(), payee.end());
  append_be64(material, opened_at);
  append_be64(material, event_index);
  return sigchain::sha256(material);
}

const ChannelState& ChannelBook::open(const OpenRequest& request) {
  if (!request.policy) throw Error(ErrorCode::kInvalidTerms, "missing payment policy");
  TimePoint now = ledger_.now();
  if (request.until <= now)
    throw Error(ErrorCode::kInvalidInterval, "parking must end in the future");
  Funds quoted = request.policy->total_price(now, request.until);
  if (request.deposit < quoted)
    throw Error(ErrorCode::kInsufficientDeposit,
                "deposit " + std::to_string(request.deposit.units) +
                    " below quoted price " + std::to_string(quoted.units));
  if (request.until > UINT64_MAX - grace_)
    throw Error(ErrorCode::kOverflow, "expiry overflows the clock");

  ChannelState state;
  state.id = derive_channel_id(request.payer, request.payee, now,
                               ledger_.next_event_index());
  state.payer = request.payer;
  state.payee = request.payee;
  state.payee_owner = request.payee_owner;
  state.car = request.car;
  state.stall = request.stall;
  state.locked = request.deposit;
  state.quoted = quoted;
  state.opened_at = now;
  state.park_until = request.until;
  state.expiry = request.until + grace_;
  state.policy = request.policy;
  state.service_provider = request.service_provider;

  Posting lock{request.payer, EscrowRef{state.id}, request.deposit};
  Json payload = {{"channel", to_hex(state.id)},
                  {"payee", state.payee},
                  {"car", state.car},
                  {"stall", state.stall},
                  {"locked", state.locked.units},
                  {"quoted", quoted.units},
                  {"park_until", state.park_until},
                  {"expiry", state.expiry}};
  if (state.service_provider) payload["service_provider"] = *state.service_provider;
  ledger_.post("CHANNEL_OPEN", std::move(payload), {&lock, 1});
  return channels_.emplace(state.id, std::move(state)).first->second;
}

ChannelState& ChannelBook::open_channel_mut(const ChannelId& id) {
  auto it = channels_.find(id);
  if (it == channels_.end()) throw Error(ErrorCode::kNotFound, "channel " + to_hex(id));
  if (it->second.status != ChannelStatus::kOpen)
    throw Error(ErrorCode::kChannelClosed,
                "channel " + to_hex(id) + " is " +
                    std::string(to_string(it->second.status)));
  return it->second;
}

settlement::Breakdown ChannelBook::settle(const Address& caller,
                                          const sigchain::Voucher& voucher,
                                          const settlement::Shares& shares,
                                          const Recipients& recipients) {
  auto& state = open_channel_mut(voucher.channel_id);
  if (caller != state.payee_owner)
    throw Error(ErrorCode::kUnauthorized, "only the payee settles a channel");
  if (!sigchain::verify_voucher(ledger_.public_key(state.payer), voucher))
    throw Error(ErrorCode::kInvalidVoucher, "signature does not verify");
  if (voucher.cumulative > state.locked)
    throw Error(ErrorCode::kInvalidVoucher, "voucher exceeds locked funds");
  if (shares.service > 0 && !recipients.service_provider)
    throw Error(ErrorCode::kInvalidTerms, "service share without a recipient");
  if (shares.landlord > 0 && !recipients.landlord)
    throw Error(ErrorCode::kInvalidTerms, "landlord share without a recipient");

  auto breakdown = settlement::split(state.locked, voucher.cumulative, shares);

  EscrowRef escrow{state.id};
  std::vector<Posting> postings;
  auto pay = [&](const Address& to, Funds amount) {
    if (amount.units > 0) postings.push_back({escrow, to, amount});
  };
  pay(recipients.administrator, breakdown.tax);
  if (recipients.service_provider) pay(*recipients.service_provider, breakdown.service);
  if (recipients.landlord) pay(*recipients.landlord, breakdown.landlord);
  pay(state.payee_owner, breakdown.operator_share);
  pay(state.payer, breakdown.refund);

  Json payload = {{"channel", to_hex(state.id)},
                  {"payee", state.payee},
                  {"car", state.car},
                  {"voucher", sigchain::voucher_to_hex(voucher)},
                  {"breakdown", settlement::to_json(breakdown)}};
  ledger_.post("CHANNEL_SETTLE", std::move(payload), postings);
  state.status = ChannelStatus::kSettled;
  state.settlement = breakdown;
  return breakdown;
}

Funds ChannelBook::timeout_refund(const Address& caller, const ChannelId& id) {
  auto& state = open_channel_mut(id);
  if (caller != state.payer)
    throw Error(ErrorCode::kUnauthorized, "only the payer reclaims the escrow");
  if (ledger_.now() < state.expiry)
    throw Error(ErrorCode::kTooEarly, "channel expires at " + std::to_string(state.expiry));
  Posting refund{EscrowRef{state.id}, state.payer, state.locked};
  ledger_.post("CHANNEL_REFUND",
               {{"channel", to_hex(state.id)},
                {"payee", state.payee},
                {"car", state.car},
                {"refund", state.locked.units}},
               {&refund, 1});
  state.status = ChannelStatus::kRefunded;
  return state.locked;
}

const ChannelState& ChannelBook::channel(const ChannelId& id) const {
  auto it = channels_.find(id);
  if (it == channels_.end()) throw Error(ErrorCode::kNotFound, "channel " + to_hex(id));
  return it->second;
}

OffchainSession OffchainSession::for_channel(const ChannelState& state,
                                             const sigchain::PublicKey& payer_key) {
  OffchainSession session;
  session.channel = state.id;
  session.payer_key = payer_key;
  session.locked = state.locked;
  session.opened_at = state.opened_at;
  session.park_until = state.park_until;
  session.policy = state.policy;
  return session;
}

sigchain::Voucher next_voucher(OffchainSession& session, const ChannelState& state,
                               const sigchain::KeyPair& payer, TimePoint now) {
  if (state.id != session.channel)
    throw Error(ErrorCode::kInvalidVoucher, "session belongs to another channel");
  if (state.status != ChannelStatus::kOpen)
    throw Error(ErrorCode::kChannelClosed, "channel " + to_hex(state.id) + " is closed");
  if (now < session.opened_at)
    throw Error(ErrorCode::kInvalidInterval, "voucher requested before opening");
  Funds owed = session.policy->total_price(session.opened_at,
                                           std::min(now, session.park_until));
  Funds cumulative = std::min(owed, session.locked);
  auto voucher = sigchain::sign_voucher(payer, session.channel, cumulative);
  session.last_emitted = std::max(session.last_emitted, cumulative);
  session.latest_emitted = voucher;
  return voucher;
}

bool accept_voucher(OffchainSession& session, const sigchain::Voucher& voucher) {
  if (voucher.channel_id != session.channel) return false;
  if (voucher.cumulative <= session.last_accepted) return false;
  if (voucher.cumulative > session.locked) return false;
  if (!sigchain::verify_voucher(session.payer_key, voucher)) return false;
  session.last_accepted = voucher.cumulative;
  session.best_accepted = voucher;
  return true;
}

}  // namespace parkchain::payments
