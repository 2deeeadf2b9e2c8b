#include "parkchain/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>

#include "parkchain/engine.hpp"

namespace parkchain::sim {
namespace {

enum class Arg {
  kUInt,
  kBool,
  kString,
  kStringOrNull,
  kStallList,
  kPolicy,
  kObject,
  kActor,
};

struct ArgSpec {
  std::string name;
  Arg type;
  bool required = true;
};

const std::map<std::string, std::vector<ArgSpec>>& action_table() {
  static const std::map<std::string, std::vector<ArgSpec>> table = {
      {"request_landlord_registration",
       {{"tax_rate", Arg::kUInt},
        {"valid_from", Arg::kUInt},
        {"valid_until", Arg::kUInt},
        {"land_info", Arg::kString, false}}},
      {"decide_registration", {{"request", Arg::kString}, {"approve", Arg::kBool}}},
      {"register_car", {{"plate", Arg::kString}}},
      {"propose_amendment", {{"contract", Arg::kString}, {"changes", Arg::kObject}}},
      {"resolve_amendment", {{"amendment", Arg::kString}, {"accept", Arg::kBool}}},
      {"create_parking_lot",
       {{"landlord_contract", Arg::kString},
        {"stalls", Arg::kUInt},
        {"policy", Arg::kPolicy},
        {"location", Arg::kString, false}}},
      {"request_tenancy",
       {{"lot", Arg::kString},
        {"stalls", Arg::kStallList},
        {"rent_fee", Arg::kUInt},
        {"period", Arg::kUInt},
        {"landlord_share", Arg::kUInt},
        {"penalty_rate", Arg::kUInt},
        {"policy", Arg::kPolicy, false}}},
      {"approve_tenancy", {{"request", Arg::kString}}},
      {"reject_tenancy", {{"request", Arg::kString}}},
      {"terminate_tenancy", {{"contract", Arg::kString}}},
      {"pay_rent", {{"contract", Arg::kString}}},
      {"set_payment_policy", {{"provider", Arg::kString}, {"policy", Arg::kPolicy}}},
      {"register_service_provider",
       {{"provider", Arg::kString},
        {"service_provider", Arg::kActor},
        {"share", Arg::kUInt}}},
      {"observe_occupancy",
       {{"lot", Arg::kString}, {"stall", Arg::kUInt}, {"plate", Arg::kStringOrNull}}},
      {"start_parking",
       {{"car", Arg::kString},
        {"provider", Arg::kString},
        {"stall", Arg::kUInt},
        {"until", Arg::kUInt},
        {"deposit", Arg::kUInt},
        {"service_provider", Arg::kString, false}}},
      {"emit_voucher", {{"channel", Arg::kString}}},
      {"accept_voucher", {{"channel", Arg::kString}, {"voucher", Arg::kString, false}}},
      {"settle_channel", {{"channel", Arg::kString}, {"voucher", Arg::kString, false}}},
      {"timeout_refund", {{"channel", Arg::kString}}},
  };
  return table;
}

const std::set<std::string>& known_roles() {
  static const std::set<std::string> roles = {
      "administrator", "landlord", "tenant", "driver", "service_provider"};
  return roles;
}

bool is_policy(const Json& value) {
  if (is_non_negative_integer(value)) return true;
  if (!value.is_array() || value.size() != pricing::kHoursPerWeek) return false;
  return std::all_of(value.begin(), value.end(),
                     [](const Json& r) { return is_non_negative_integer(r); });
}

bool matches(const Json& value, Arg type) {
  switch (type) {
    case Arg::kUInt: return is_non_negative_integer(value);
    case Arg::kBool: return value.is_boolean();
    case Arg::kString:
    case Arg::kActor: return value.is_string();
    case Arg::kStringOrNull: return value.is_string() || value.is_null();
    case Arg::kStallList:
      return value.is_array() &&
             std::all_of(value.begin(), value.end(), [](const Json& s) {
               return is_non_negative_integer(s) &&
                      s.get<std::uint64_t>() <= UINT32_MAX;
             });
    case Arg::kPolicy: return is_policy(value);
    case Arg::kObject: return value.is_object();
  }
  return false;
}

std::string_view describe(Arg type) {
  switch (type) {
    case Arg::kUInt: return "a non-negative integer";
    case Arg::kBool: return "a boolean";
    case Arg::kString: return "a string";
    case Arg::kActor: return "an actor id";
    case Arg::kStringOrNull: return "a string or null";
    case Arg::kStallList: return "an array of stall numbers";
    case Arg::kPolicy: return "a rate or an array of 168 rates";
    case Arg::kObject: return "an object";
  }
  return "?";
}

pricing::PolicyPtr policy_from(const Json& value) {
  if (is_non_negative_integer(value))
    return std::make_shared<pricing::WeekHourPolicy>(
        pricing::WeekHourPolicy::uniform(value.get<std::uint64_t>()));
  return std::make_shared<pricing::WeekHourPolicy>(
      pricing::WeekHourPolicy::from_json(value));
}

void put_be64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

std::string event_line(std::uint64_t index, TimePoint time, const std::string& kind,
                       Json payload) {
  return to_jsonl(EventRecord{index, time, kind, std::move(payload)});
}

/// Drives one engine through a scenario.
class Runner {
 public:
  explicit Runner(const Scenario& scenario) : scenario_(scenario) {}

  RunArtifacts run();

 private:
  const Address& address(const std::string& actor) const { return addresses_.at(actor); }
  std::string resolve(const Json& value) const;
  payments::ChannelId channel_id(const Json& value) const;
  std::string actor_of(const Address& address) const;
  void trace(const std::string& kind, Json payload);

  std::string execute(const Step& step);
  Json build_report() const;

  const Scenario& scenario_;
  std::unique_ptr<Engine> engine_;
  std::map<std::string, Address> addresses_;
  std::map<std::string, sigchain::KeyPair> keys_;
  std::map<Address, std::string> actors_;
  std::map<std::string, std::string> aliases_;
  std::string offchain_;
  std::uint64_t offchain_index_ = 0;
};

std::string Runner::resolve(const Json& value) const {
  auto text = value.get<std::string>();
  auto it = aliases_.find(text);
  return it == aliases_.end() ? text : it->second;
}

payments::ChannelId Runner::channel_id(const Json& value) const {
  auto text = resolve(value);
  Bytes raw;
  payments::ChannelId id{};
  if (!from_hex(text, raw) || raw.size() != id.size())
    throw Error(ErrorCode::kNotFound, "no channel '" + text + "'");
  std::copy(raw.begin(), raw.end(), id.begin());
  return id;
}

std::string Runner::actor_of(const Address& address) const {
  auto it = actors_.find(address);
  return it == actors_.end() ? address.hex() : it->second;
}

void Runner::trace(const std::string& kind, Json payload) {
  offchain_ += event_line(offchain_index_++, engine_->now(), kind, std::move(payload));
  offchain_ += '\n';
}

RunArtifacts Runner::run() {
  auto admin_it = std::find_if(
      scenario_.genesis.begin(), scenario_.genesis.end(),
      [](const GenesisEntry& e) { return e.role == "administrator"; });
  if (admin_it == scenario_.genesis.end())
    throw ScenarioInvalid({{std::nullopt, "genesis has no administrator"}});
  if (!std::is_sorted(scenario_.steps.begin(), scenario_.steps.end(),
                      [](const Step& x, const Step& y) { return x.at < y.at; }))
    throw ScenarioInvalid({{std::nullopt, "steps are not in time order"}});
  const auto& admin = *admin_it;
  auto admin_seed = actor_seed(scenario_.seed, admin.id);
  engine_ = std::make_unique<Engine>(admin_seed, admin.balance,
                                     EngineConfig{scenario_.grace});
  for (const auto& entry : scenario_.genesis) {
    auto seed = actor_seed(scenario_.seed, entry.id);
    Address addr = &entry == &admin ? engine_->administrator()
                                    : engine_->create_account(seed, entry.balance);
    addresses_.emplace(entry.id, addr);
    keys_.emplace(entry.id, sigchain::derive_keypair(seed));
    actors_.emplace(addr, entry.id);
  }
  engine_->ledger().close_genesis();

  for (std::size_t i = 0; i < scenario_.steps.size(); ++i) {
    const auto& step = scenario_.steps[i];
    try {
      engine_->advance_to(step.at);
      auto produced = execute(step);
      if (step.bind) aliases_[*step.bind] = produced;
    } catch (const std::exception& e) {
      throw StepFailed(i, step.action, e.what());
    }
  }

  RunArtifacts artifacts;
  for (const auto& event : engine_->ledger().events()) {
    artifacts.events_jsonl += to_jsonl(event);
    artifacts.events_jsonl += '\n';
  }
  artifacts.offchain_jsonl = offchain_;
  artifacts.report = build_report();
  return artifacts;
}

std::string Runner::execute(const Step& step) {
  const auto& args = step.args;
  const Address& caller = address(step.actor);
  const auto& a = step.action;

  if (a == "request_landlord_registration") {
    registry::LandlordTerms terms;
    terms.tax_rate = static_cast<BasisPoints>(
        std::min<std::uint64_t>(args["tax_rate"].get<std::uint64_t>(), UINT32_MAX));
    terms.valid_from = args["valid_from"].get<TimePoint>();
    terms.valid_until = args["valid_until"].get<TimePoint>();
    terms.land_info = args.value("land_info", "");
    return engine_->request_landlord_registration(caller, terms);
  }
  if (a == "decide_registration") {
    auto contract = engine_->decide_registration(caller, resolve(args["request"]),
                                                 args["approve"].get<bool>());
    return contract ? contract->id : std::string{};
  }
  if (a == "register_car") return engine_->register_car(caller, args["plate"]);
  if (a == "propose_amendment")
    return engine_->propose_amendment(caller, resolve(args["contract"]), args["changes"]);
  if (a == "resolve_amendment") {
    auto id = resolve(args["amendment"]);
    engine_->resolve_amendment(caller, id, args["accept"].get<bool>());
    return id;
  }
  if (a == "create_parking_lot") {
    auto stalls = args["stalls"].get<std::uint64_t>();
    if (stalls > UINT32_MAX) throw Error(ErrorCode::kInvalidTerms, "too many stalls");
    return engine_->create_parking_lot(caller, resolve(args["landlord_contract"]),
                                       static_cast<std::uint32_t>(stalls),
                                       policy_from(args["policy"]),
                                       args.value("location", ""));
  }
  if (a == "request_tenancy") {
    providers::RentingTerms terms;
    for (const auto& s : args["stalls"]) terms.stalls.insert(s.get<providers::StallId>());
    terms.rent_fee = Funds{args["rent_fee"].get<std::uint64_t>()};
    terms.period = args["period"].get<Duration>();
    auto share = args["landlord_share"].get<std::uint64_t>();
    auto penalty = args["penalty_rate"].get<std::uint64_t>();
    if (share > kBasisPointScale || penalty > UINT32_MAX)
      throw Error(ErrorCode::kInvalidTerms, "share or penalty rate out of range");
    terms.landlord_share = static_cast<BasisPoints>(share);
    terms.penalty_rate = static_cast<BasisPoints>(penalty);
    if (args.contains("policy")) terms.policy = policy_from(args["policy"]);
    return engine_->request_tenancy(caller, resolve(args["lot"]), std::move(terms));
  }
  if (a == "approve_tenancy") return engine_->approve_tenancy(caller, resolve(args["request"]));
  if (a == "reject_tenancy") {
    auto id = resolve(args["request"]);
    engine_->reject_tenancy(caller, id);
    return id;
  }
  if (a == "terminate_tenancy") {
    auto id = resolve(args["contract"]);
    engine_->terminate_tenancy(caller, id);
    return id;
  }
  if (a == "pay_rent") {
    auto id = resolve(args["contract"]);
    engine_->pay_rent(caller, id);
    return id;
  }
  if (a == "set_payment_policy") {
    auto id = resolve(args["provider"]);
    engine_->set_payment_policy(caller, id, policy_from(args["policy"]));
    return id;
  }
  if (a == "register_service_provider") {
    auto share = args["share"].get<std::uint64_t>();
    if (share > kBasisPointScale)
      throw Error(ErrorCode::kShareOverflow, "share above 10000 bp");
    return engine_->register_service_provider(
        caller, resolve(args["provider"]),
        address(args["service_provider"].get<std::string>()),
        static_cast<BasisPoints>(share));
  }
  if (a == "observe_occupancy") {
    auto stall = args["stall"].get<std::uint64_t>();
    if (stall > UINT32_MAX) throw Error(ErrorCode::kUnknownStall, "stall out of range");
    std::optional<std::string> plate;
    if (args["plate"].is_string()) plate = args["plate"].get<std::string>();
    auto event = engine_->observe_occupancy(caller, resolve(args["lot"]),
                                            static_cast<providers::StallId>(stall), plate);
    return event.kind;
  }
  if (a == "start_parking") {
    auto stall = args["stall"].get<std::uint64_t>();
    if (stall > UINT32_MAX) throw Error(ErrorCode::kUnknownStall, "stall out of range");
    std::optional<std::string> sp;
    if (args.contains("service_provider")) sp = resolve(args["service_provider"]);
    auto id = engine_->start_parking(caller, resolve(args["car"]), resolve(args["provider"]),
                                     static_cast<providers::StallId>(stall),
                                     args["until"].get<TimePoint>(),
                                     Funds{args["deposit"].get<std::uint64_t>()}, sp);
    return to_hex(id);
  }
  if (a == "emit_voucher") {
    auto id = channel_id(args["channel"]);
    auto voucher = engine_->next_voucher(id, keys_.at(step.actor));
    auto wire = sigchain::voucher_to_hex(voucher);
    trace("VOUCHER_EMITTED", {{"channel", to_hex(id)},
                              {"by", step.actor},
                              {"cumulative", voucher.cumulative.units},
                              {"voucher", wire}});
    return wire;
  }
  if (a == "accept_voucher") {
    auto id = channel_id(args["channel"]);
    const auto& state = engine_->channels().channel(id);
    if (caller != state.payee_owner)
      throw Error(ErrorCode::kUnauthorized, "only the payee accepts vouchers");
    std::optional<sigchain::Voucher> voucher;
    if (args.contains("voucher")) {
      voucher = sigchain::voucher_from_hex(args["voucher"].get<std::string>());
      if (!voucher) throw Error(ErrorCode::kInvalidVoucher, "malformed voucher encoding");
    } else {
      voucher = engine_->session(id).latest_emitted;
      if (!voucher) throw Error(ErrorCode::kInvalidVoucher, "no voucher has been emitted");
    }
    bool accepted = engine_->accept_voucher(id, *voucher);
    trace(accepted ? "VOUCHER_ACCEPTED" : "VOUCHER_REJECTED",
          {{"channel", to_hex(id)},
           {"by", step.actor},
           {"cumulative", voucher->cumulative.units},
           {"voucher", sigchain::voucher_to_hex(*voucher)}});
    return sigchain::voucher_to_hex(*voucher);
  }
  if (a == "settle_channel") {
    auto id = channel_id(args["channel"]);
    std::optional<sigchain::Voucher> voucher;
    if (args.contains("voucher")) {
      voucher = sigchain::voucher_from_hex(args["voucher"].get<std::string>());
      if (!voucher) throw Error(ErrorCode::kInvalidVoucher, "malformed voucher encoding");
    } else {
      voucher = engine_->session(id).best_accepted;
      if (!voucher) throw Error(ErrorCode::kInvalidVoucher, "no voucher has been accepted");
    }
    engine_->settle_channel(caller, *voucher);
    return to_hex(id);
  }
  if (a == "timeout_refund") {
    auto id = channel_id(args["channel"]);
    engine_->timeout_refund(caller, id);
    return to_hex(id);
  }
  throw Error(ErrorCode::kNotFound, "unknown action " + a);
}

Json Runner::build_report() const {
  auto snapshot = engine_->ledger().snapshot();
  Json report;

  Json balances = Json::object();
  for (const auto& [actor, addr] : addresses_)
    balances[actor] = snapshot.balances.at(addr).units;
  report["balances"] = std::move(balances);

  Funds tax, service, landlord, operator_total, settle_refunds, timeout_refunds;
  Json channels = Json::object();
  for (const auto& [id, state] : engine_->channels().channels()) {
    Json entry = {{"payee", state.payee},
                  {"payer", actor_of(state.payer)},
                  {"car", state.car},
                  {"stall", state.stall},
                  {"locked", state.locked.units},
                  {"quoted", state.quoted.units},
                  {"opened_at", state.opened_at},
                  {"park_until", state.park_until},
                  {"status", payments::to_string(state.status)}};
    if (state.settlement) {
      const auto& b = *state.settlement;
      entry["breakdown"] = settlement::to_json(b);
      tax += b.tax;
      service += b.service;
      landlord += b.landlord;
      operator_total += b.operator_share;
      settle_refunds += b.refund;
    } else {
      entry["breakdown"] = nullptr;
      if (state.status == payments::ChannelStatus::kRefunded)
        timeout_refunds += state.locked;
    }
    channels[to_hex(id)] = std::move(entry);
  }
  report["channels"] = std::move(channels);

  Funds rents, penalties;
  for (const auto& [_, contract] : engine_->marketplace().renting_contracts()) {
    rents += contract.rent_paid;
    penalties += contract.penalties_paid;
  }

  report["totals"] = {{"genesis", snapshot.genesis_total.units},
                      {"balances", snapshot.total_balances().units},
                      {"escrow", snapshot.total_escrow().units},
                      {"tax", tax.units},
                      {"service", service.units},
                      {"landlord", landlord.units},
                      {"operator", operator_total.units},
                      {"settlement_refunds", settle_refunds.units},
                      {"timeout_refunds", timeout_refunds.units},
                      {"rents", rents.units},
                      {"penalties", penalties.units}};

  std::map<std::string, std::uint64_t> violations = {{"OCCUPANCY_VIOLATION", 0},
                                                     {"OCCUPANCY_MISMATCH", 0}};
  for (const auto& event : engine_->ledger().events()) {
    auto it = violations.find(event.kind);
    if (it != violations.end()) ++it->second;
  }
  report["violations"] = violations;
  report["ids"] = aliases_;
  report["events"] = snapshot.event_count;
  report["final_time"] = snapshot.now;
  return report;
}

}  // namespace

std::string to_string(const Diagnostic& d) {
  if (d.step) return "step " + std::to_string(*d.step) + ": " + d.message;
  return d.message;
}

const std::vector<std::string>& known_actions() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : action_table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<Diagnostic> validate_scenario(const Json& doc) {
  std::vector<Diagnostic> out;
  auto top = [&](std::string message) { out.push_back({std::nullopt, std::move(message)}); };

  if (!doc.is_object()) {
    top("scenario must be a JSON object");
    return out;
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    top("missing integer 'version'");
  else if (doc["version"].get<std::int64_t>() != kScenarioVersion)
    top("unsupported version " + doc["version"].dump() + " (expected 1)");
  if (!doc.contains("seed") || !is_non_negative_integer(doc["seed"]))
    top("missing non-negative integer 'seed'");
  if (doc.contains("grace") && !is_non_negative_integer(doc["grace"]))
    top("'grace' must be a non-negative integer");

  std::set<std::string> actors;
  if (!doc.contains("genesis") || !doc["genesis"].is_array()) {
    top("missing array 'genesis'");
  } else {
    int administrators = 0;
    for (std::size_t i = 0; i < doc["genesis"].size(); ++i) {
      const auto& e = doc["genesis"][i];
      auto where = "genesis[" + std::to_string(i) + "]: ";
      if (!e.is_object() || !e.contains("id") || !e["id"].is_string() ||
          e["id"].get<std::string>().empty()) {
        top(where + "missing actor 'id'");
        continue;
      }
      auto id = e["id"].get<std::string>();
      if (!actors.insert(id).second) top(where + "duplicate actor id '" + id + "'");
      if (!e.contains("role") || !e["role"].is_string() ||
          !known_roles().contains(e["role"].get<std::string>()))
        top(where + "unknown or missing role for '" + id + "'");
      else if (e["role"] == "administrator")
        ++administrators;
      if (e.contains("balance") && !is_non_negative_integer(e["balance"]))
        top(where + "balance must be a non-negative integer");
    }
    if (administrators != 1)
      top("genesis must declare exactly one administrator (found " +
          std::to_string(administrators) + ")");
  }

  if (!doc.contains("steps") || !doc["steps"].is_array()) {
    top("missing array 'steps'");
    return out;
  }
  std::uint64_t last_at = 0;
  std::set<std::string> binds;
  for (std::size_t i = 0; i < doc["steps"].size(); ++i) {
    const auto& s = doc["steps"][i];
    auto diag = [&](std::string message) { out.push_back({i, std::move(message)}); };
    if (!s.is_object()) {
      diag("step must be an object");
      continue;
    }
    if (!s.contains("at") || !is_non_negative_integer(s["at"])) {
      diag("missing non-negative integer 'at'");
    } else {
      auto at = s["at"].get<std::uint64_t>();
      if (at < last_at)
        diag("timestamp " + std::to_string(at) + " precedes previous step at " +
             std::to_string(last_at));
      last_at = std::max(last_at, at);
    }
    if (!s.contains("actor") || !s["actor"].is_string())
      diag("missing 'actor'");
    else if (!actors.contains(s["actor"].get<std::string>()))
      diag("undeclared actor '" + s["actor"].get<std::string>() + "'");
    if (s.contains("as")) {
      if (!s["as"].is_string() || s["as"].get<std::string>().empty())
        diag("'as' must be a non-empty string");
      else if (!binds.insert(s["as"].get<std::string>()).second)
        diag("alias '" + s["as"].get<std::string>() + "' is bound twice");
    }
    const Json args = s.contains("args") ? s["args"] : Json::object();
    if (!args.is_object()) diag("'args' must be an object");
    if (!s.contains("action") || !s["action"].is_string()) {
      diag("missing 'action'");
      continue;
    }
    auto action = s["action"].get<std::string>();
    auto it = action_table().find(action);
    if (it == action_table().end()) {
      diag("unknown action '" + action + "'");
      continue;
    }
    if (!args.is_object()) continue;
    std::set<std::string> allowed;
    for (const auto& spec : it->second) {
      allowed.insert(spec.name);
      if (!args.contains(spec.name)) {
        if (spec.required) diag(action + ": missing argument '" + spec.name + "'");
        continue;
      }
      const auto& value = args[spec.name];
      if (!matches(value, spec.type)) {
        diag(action + ": argument '" + spec.name + "' must be " +
             std::string(describe(spec.type)));
      } else if (spec.type == Arg::kActor && !actors.contains(value.get<std::string>())) {
        diag(action + ": undeclared actor '" + value.get<std::string>() + "'");
      }
    }
    for (const auto& [key, _] : args.items()) {
      if (!allowed.contains(key)) diag(action + ": unexpected argument '" + key + "'");
    }
  }
  return out;
}

std::vector<Diagnostic> validate_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) return {{std::nullopt, "file is not valid JSON"}};
  return validate_scenario(doc);
}

ScenarioInvalid::ScenarioInvalid(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(diagnostics.empty() ? "invalid scenario"
                                             : "invalid scenario: " +
                                                   to_string(diagnostics.front())),
      diagnostics_(std::move(diagnostics)) {}

StepFailed::StepFailed(std::size_t step, const std::string& action, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + " (" + action + ") failed: " + what),
      step_(step) {}

Scenario parse_scenario(const Json& doc) {
  auto diagnostics = validate_scenario(doc);
  if (!diagnostics.empty()) throw ScenarioInvalid(std::move(diagnostics));
  Scenario scenario;
  scenario.version = doc["version"].get<int>();
  scenario.seed = doc["seed"].get<std::uint64_t>();
  scenario.grace = doc.value("grace", kDefaultGrace);
  for (const auto& e : doc["genesis"])
    scenario.genesis.push_back({e["id"].get<std::string>(), e["role"].get<std::string>(),
                                Funds{e.value("balance", std::uint64_t{0})}});
  for (const auto& s : doc["steps"]) {
    Step step;
    step.at = s["at"].get<TimePoint>();
    step.actor = s["actor"].get<std::string>();
    step.action = s["action"].get<std::string>();
    if (s.contains("args")) step.args = s["args"];
    if (s.contains("as")) step.bind = s["as"].get<std::string>();
    scenario.steps.push_back(std::move(step));
  }
  return scenario;
}

std::uint64_t actor_seed(std::uint64_t scenario_seed, const std::string& actor_id) {
  Bytes material(8);
  put_be64(material.data(), scenario_seed);
  material.insert(material.end(), actor_id.begin(), actor_id.end());
  auto digest = sigchain::sha256(material);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[i];
  return seed;
}

RunArtifacts run_scenario(const Scenario& scenario) {
  Runner runner(scenario);
  return runner.run();
}

std::string report_to_string(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace parkchain::sim
