#include "acool/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acool/acool.hpp"
#include "acool/rba.hpp"
#include "acool/rng.hpp"
#include "acool/small_t.hpp"
#include "adversary.hpp"

namespace acool {

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::array<E, N>& all, const char* what) {
  for (E e : all)
    if (to_string(e) == s) return e;
  throw Error(ErrorCode::InvalidConfig, std::string("unknown ") + what + ": " + std::string(s));
}

constexpr std::array kProtocols{ProtocolKind::Acool, ProtocolKind::Rba, ProtocolKind::Rbc,
                                ProtocolKind::SmallT};
constexpr std::array kAdversaries{AdversaryKind::None,
                                  AdversaryKind::CrashSilent,
                                  AdversaryKind::EquivocateSymbols,
                                  AdversaryKind::GarbageShares,
                                  AdversaryKind::WithholdFromSubset,
                                  AdversaryKind::SplitInputBuilder,
                                  AdversaryKind::ReadySpammer,
                                  AdversaryKind::RandomByzantine};
constexpr std::array kSchedulers{SchedulerKind::Uniform, SchedulerKind::LifoBiased,
                                 SchedulerKind::AdversaryDirected, SchedulerKind::Fifo};
constexpr std::array kAbbas{AbbaKind::Oracle, AbbaKind::Coin};

Bytes random_value(std::mt19937_64& rng, std::size_t bytes) {
  Bytes v(std::max<std::size_t>(bytes, 1));
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

void validate(const SimConfig& cfg) {
  if (cfg.n < 3 * cfg.t + 1)
    throw Error(ErrorCode::ResilienceViolation,
                "n = " + std::to_string(cfg.n) + " < 3t + 1 = " + std::to_string(3 * cfg.t + 1));
  if (cfg.n > 4096) throw Error(ErrorCode::InvalidConfig, "n too large");
  if (cfg.msg_len_bits == 0) throw Error(ErrorCode::InvalidParams, "message length must be positive");
  if (!cfg.inputs.empty() && cfg.inputs.size() != cfg.n)
    throw Error(ErrorCode::InvalidConfig, "inputs must list every node");
  if (cfg.byzantine.size() > cfg.t) throw Error(ErrorCode::InvalidConfig, "more than t Byzantine nodes");
  for (NodeId b : cfg.byzantine)
    if (b >= cfg.n) throw Error(ErrorCode::InvalidConfig, "Byzantine id out of range");
  for (NodeId v : cfg.victims)
    if (v >= cfg.n) throw Error(ErrorCode::InvalidConfig, "victim id out of range");
  if (cfg.protocol == ProtocolKind::Rbc && cfg.leader >= cfg.n)
    throw Error(ErrorCode::InvalidConfig, "leader id out of range");
}

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);
  RunReport run();

 private:
  struct Pending {
    NodeId from = 0, to = 0;
    MsgPtr msg;
    std::uint64_t sent = 0;
    std::uint32_t round = 0;
    std::uint32_t gen = 0;
    std::uint32_t pos = 0;
    bool live = false;
    bool from_byz = false;
  };
  using Ref = std::pair<std::uint32_t, std::uint32_t>;

  std::unique_ptr<ProtocolNode> make_node(NodeId id) const;
  void setup();
  void enqueue(NodeId from, const Envelope& env, bool from_byz);
  void flush(NodeId sender, Outbox& out, std::size_t shadow);
  std::uint32_t pick();
  void remove(std::uint32_t id);
  bool ref_live(const Ref& r) const { return slots_[r.first].live && slots_[r.first].gen == r.second; }
  void deliver(std::uint32_t id);
  void after_honest(NodeId j);
  void maybe_oracle();
  void finish(RunReport& rep);

  SimConfig cfg_;
  CodeParams params_;
  std::mt19937_64 rng_;
  std::uint64_t coin_seed_ = 0;
  std::vector<bool> byz_;
  std::vector<bool> victim_;
  std::vector<std::unique_ptr<ProtocolNode>> nodes_;
  std::vector<std::vector<std::unique_ptr<ProtocolNode>>> shadows_;
  std::unique_ptr<detail::Adversary> adversary_;
  std::vector<std::uint32_t> recv_round_;
  std::vector<bool> done_;
  std::size_t honest_count_ = 0, honest_done_ = 0;
  bool oracle_hint_ = false;
  bool uses_oracle_ = false;
  std::optional<bool> oracle_decision_;

  std::vector<Pending> slots_;
  std::vector<std::uint32_t> free_;
  std::vector<std::uint32_t> pool_;
  std::deque<Ref> fifo_;
  std::vector<Ref> stack_;
  std::uint64_t step_ = 0;
  std::uint64_t window_ = 0;

  Metrics m_;
  std::vector<EventRecord> events_;
  double ideal_cb_ = 0;
  std::vector<std::optional<Bytes>> inputs_;
};

Simulator::Simulator(const SimConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
  validate(cfg_);
  params_ = run_params(cfg_);
  ideal_cb_ = ideal_symbol_bits(params_, 8 * cfg_.payload_bytes());
  window_ = cfg_.fairness_window ? cfg_.fairness_window : 8ULL * cfg_.n * cfg_.n;
  coin_seed_ = splitmix64(cfg_.seed ^ 0xc0111c0111ULL);
}

std::unique_ptr<ProtocolNode> Simulator::make_node(NodeId id) const {
  AcoolOptions opt;
  opt.skip_brba = cfg_.skip_brba;
  opt.legacy_cool = cfg_.legacy_cool;
  opt.abba = cfg_.abba;
  opt.coin_seed = coin_seed_;
  switch (cfg_.protocol) {
    case ProtocolKind::Acool:
      return std::make_unique<AcoolNode>(params_, id, opt);
    case ProtocolKind::Rba:
      return std::make_unique<RbaNode>(params_, id);
    case ProtocolKind::Rbc:
      return std::make_unique<RbcNode>(params_, id, cfg_.leader,
                                       cfg_.rbc_balanced ? RbcMode::Balanced : RbcMode::Unbalanced);
    case ProtocolKind::SmallT:
      return std::make_unique<SmallTNode>(cfg_.n, params_, id, opt);
  }
  return nullptr;
}

void Simulator::setup() {
  const std::size_t n = cfg_.n;
  byz_.assign(n, false);
  victim_.assign(n, false);

  std::vector<NodeId> byz = cfg_.byzantine;
  if (byz.empty() && cfg_.adversary != AdversaryKind::None && cfg_.t > 0) {
    std::vector<NodeId> ids;
    for (std::size_t j = 0; j < n; ++j) {
      const bool is_leader = cfg_.protocol == ProtocolKind::Rbc && j == cfg_.leader;
      if (!is_leader) ids.push_back(static_cast<NodeId>(j));
    }
    std::shuffle(ids.begin(), ids.end(), rng_);
    std::size_t want = cfg_.t;
    if (cfg_.protocol == ProtocolKind::Rbc && cfg_.byzantine_leader) {
      byz.push_back(cfg_.leader);
      --want;
    }
    for (std::size_t i = 0; i < want && i < ids.size(); ++i) byz.push_back(ids[i]);
  }
  for (NodeId b : byz) byz_[b] = true;

  if (!cfg_.victims.empty()) {
    for (NodeId v : cfg_.victims) victim_[v] = true;
  } else {
    std::vector<NodeId> honest;
    for (std::size_t j = 0; j < n; ++j)
      if (!byz_[j]) honest.push_back(static_cast<NodeId>(j));
    for (std::size_t i = 0; i < (honest.size() + 1) / 2; ++i) victim_[honest[i]] = true;
  }

  if (cfg_.inputs.empty()) {
    const Bytes common = random_value(rng_, cfg_.payload_bytes());
    inputs_.assign(n, common);
  } else {
    inputs_ = cfg_.inputs;
  }
  Bytes alt = cfg_.split_alt_input ? *cfg_.split_alt_input : random_value(rng_, cfg_.payload_bytes());
  oracle_hint_ = (rng_() & 1) != 0;

  adversary_ = std::make_unique<detail::Adversary>(cfg_.adversary, params_, n, byz_, victim_, rng_());
  uses_oracle_ = cfg_.abba == AbbaKind::Oracle &&
                 (cfg_.protocol == ProtocolKind::Acool || cfg_.protocol == ProtocolKind::SmallT);

  nodes_.resize(n);
  shadows_.resize(n);
  recv_round_.assign(n, 0);
  done_.assign(n, false);
  m_.egress.assign(n, 0);
  m_.dispersal_egress.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto id = static_cast<NodeId>(j);
    if (byz_[j]) {
      for (std::size_t s = 0; s < adversary_->shadows(); ++s) shadows_[j].push_back(make_node(id));
    } else {
      nodes_[j] = make_node(id);
      ++honest_count_;
    }
  }

  auto gives_input = [&](std::size_t j) {
    return cfg_.protocol != ProtocolKind::Rbc || j == cfg_.leader;
  };
  for (std::size_t j = 0; j < n; ++j) {
    const auto id = static_cast<NodeId>(j);
    if (byz_[j]) {
      for (auto& e : adversary_->opening(id)) enqueue(id, e, true);
      for (std::size_t s = 0; s < shadows_[j].size(); ++s) {
        Outbox out;
        if (gives_input(j)) {
          const std::optional<Bytes>& in = s == 0 ? inputs_[j] : std::optional<Bytes>(alt);
          if (in) shadows_[j][s]->input(*in, out);
        }
        flush(id, out, s);
      }
    } else {
      Outbox out;
      if (gives_input(j) && inputs_[j]) nodes_[j]->input(*inputs_[j], out);
      flush(id, out, 0);
      after_honest(id);
    }
  }
  maybe_oracle();
}

void Simulator::enqueue(NodeId from, const Envelope& env, bool from_byz) {
  if (env.to >= cfg_.n) return;
  std::uint32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  Pending& p = slots_[id];
  p.from = from;
  p.to = env.to;
  p.msg = env.msg;
  p.sent = step_;
  p.round = recv_round_[from] + 1;
  p.live = true;
  p.from_byz = from_byz;
  p.pos = static_cast<std::uint32_t>(pool_.size());
  pool_.push_back(id);
  fifo_.emplace_back(id, p.gen);
  if (cfg_.scheduler == SchedulerKind::LifoBiased) stack_.emplace_back(id, p.gen);

  if (from_byz && !cfg_.count_byzantine_bits) return;
  const ProtocolMsg& msg = *env.msg;
  const MsgTag tag = tag_of(msg);
  const std::uint64_t bits = payload_bits(msg, params_);
  m_.bits_total += bits;
  m_.bits_by_tag[static_cast<std::size_t>(tag)] += bits;
  m_.msgs_by_tag[static_cast<std::size_t>(tag)] += 1;
  m_.serialized_bits += serialized_bits(msg);
  if (const auto* lm = std::get_if<LeaderMessageMsg>(&msg))
    m_.ideal_bits += 8.0 * static_cast<double>(lm->w.size());
  else if (const std::size_t sc = symbol_count(msg); sc > 0)
    m_.ideal_bits += static_cast<double>(sc) * ideal_cb_;
  else
    m_.ideal_bits += 1.0;
  m_.messages += 1;
  m_.egress[from] += bits;
  if (tag == MsgTag::Leader || tag == MsgTag::LeaderMessage) m_.dispersal_egress[from] += bits;
}

void Simulator::flush(NodeId sender, Outbox& out, std::size_t shadow) {
  auto env = out.take();
  if (env.empty()) return;
  if (byz_[sender]) {
    env = adversary_->transform(sender, shadow, std::move(env));
    for (const auto& e : env) enqueue(sender, e, true);
  } else {
    for (const auto& e : env) enqueue(sender, e, false);
  }
}

void Simulator::remove(std::uint32_t id) {
  Pending& p = slots_[id];
  const std::uint32_t last = pool_.back();
  pool_[p.pos] = last;
  slots_[last].pos = p.pos;
  pool_.pop_back();
  p.live = false;
  ++p.gen;
  free_.push_back(id);
}

std::uint32_t Simulator::pick() {
  while (!fifo_.empty() && !ref_live(fifo_.front())) fifo_.pop_front();
  if (!fifo_.empty()) {
    const Pending& oldest = slots_[fifo_.front().first];
    if (step_ - oldest.sent > window_) return fifo_.front().first;
  }
  const std::size_t size = pool_.size();
  switch (cfg_.scheduler) {
    case SchedulerKind::Fifo:
      return fifo_.front().first;
    case SchedulerKind::Uniform:
      return pool_[rng_() % size];
    case SchedulerKind::LifoBiased:
      if (rng_() % 10 < 7) {
        while (!stack_.empty() && !ref_live(stack_.back())) stack_.pop_back();
        if (!stack_.empty()) return stack_.back().first;
      }
      return pool_[rng_() % size];
    case SchedulerKind::AdversaryDirected: {
      std::uint32_t best = pool_[rng_() % size];
      auto score = [&](std::uint32_t id) {
        const Pending& p = slots_[id];
        int s = 0;
        if (p.from_byz) s += 2;
        if (adversary_->is_victim(p.to)) s -= 3;
        return s;
      };
      int best_score = score(best);
      for (int k = 0; k < 6; ++k) {
        const std::uint32_t cand = pool_[rng_() % size];
        const int s = score(cand);
        if (s > best_score) {
          best = cand;
          best_score = s;
        }
      }
      return best;
    }
  }
  return pool_[rng_() % size];
}

void Simulator::deliver(std::uint32_t id) {
  const Pending p = slots_[id];
  remove(id);
  m_.max_delay = std::max<std::uint64_t>(m_.max_delay, step_ - p.sent);
  const NodeId to = p.to;
  bool delivered = false;
  if (byz_[to]) {
    recv_round_[to] = std::max(recv_round_[to], p.round);
    for (std::size_t s = 0; s < shadows_[to].size(); ++s) {
      auto& node = shadows_[to][s];
      if (node->terminated()) continue;
      Outbox out;
      node->handle(p.from, *p.msg, out);
      flush(to, out, s);
      delivered = true;
    }
  } else if (!nodes_[to]->terminated()) {
    recv_round_[to] = std::max(recv_round_[to], p.round);
    Outbox out;
    nodes_[to]->handle(p.from, *p.msg, out);
    flush(to, out, 0);
    after_honest(to);
    delivered = true;
  }
  if (delivered && cfg_.record_events) {
    const std::uint64_t bits = payload_bits(*p.msg, params_);
    events_.push_back({step_, p.from, to, tag_of(*p.msg), bits, p.round});
  }
}

void Simulator::after_honest(NodeId j) {
  if (done_[j] || !nodes_[j]->terminated()) return;
  done_[j] = true;
  ++honest_done_;
  m_.max_round = std::max(m_.max_round, recv_round_[j]);
}

void Simulator::maybe_oracle() {
  if (!uses_oracle_ || oracle_decision_) return;
  std::map<NodeId, bool> inputs;
  std::uint32_t depth = 0;
  for (std::size_t j = 0; j < cfg_.n; ++j) {
    if (byz_[j]) continue;
    const ProtocolNode& node = *nodes_[j];
    if (!node.abba_participant()) continue;
    if (auto b = node.abba_input()) {
      inputs[static_cast<NodeId>(j)] = *b;
      depth = std::max(depth, recv_round_[j]);
    } else if (!node.terminated()) {
      return;
    }
  }
  if (inputs.empty()) return;
  const bool b = oracle_abba_decide(inputs, oracle_hint_);
  oracle_decision_ = b;
  const std::uint32_t round = depth + 1;
  if (cfg_.count_abba_bits) m_.oracle_bits += inputs.size();
  for (std::size_t j = 0; j < cfg_.n; ++j) {
    const auto id = static_cast<NodeId>(j);
    if (byz_[j]) {
      for (std::size_t s = 0; s < shadows_[j].size(); ++s) {
        auto& node = shadows_[j][s];
        if (!node->abba_participant() || node->terminated()) continue;
        recv_round_[j] = std::max(recv_round_[j], round);
        Outbox out;
        node->abba_deliver(b, out);
        flush(id, out, s);
      }
    } else {
      auto& node = nodes_[j];
      if (!node->abba_participant() || node->terminated()) continue;
      recv_round_[j] = std::max(recv_round_[j], round);
      if (cfg_.count_abba_bits) m_.oracle_bits += 1;
      Outbox out;
      node->abba_deliver(b, out);
      flush(id, out, 0);
      after_honest(id);
    }
  }
  if (cfg_.count_abba_bits) m_.bits_total += m_.oracle_bits;
}

RunReport Simulator::run() {
  setup();
  RunReport rep;
  rep.status = RunStatus::Quiescent;
  while (honest_done_ < honest_count_) {
    if (pool_.empty()) break;
    if (step_ >= cfg_.event_cap) {
      rep.status = RunStatus::EventCap;
      break;
    }
    deliver(pick());
    ++step_;
    maybe_oracle();
  }
  if (honest_done_ == honest_count_) rep.status = RunStatus::Terminated;
  finish(rep);
  return rep;
}

void Simulator::finish(RunReport& rep) {
  const std::size_t n = cfg_.n;
  rep.config = cfg_;
  rep.params = params_;
  rep.steps = step_;
  rep.honest.resize(n);
  rep.outputs.resize(n);
  rep.oracle_decision = oracle_decision_;

  for (std::size_t j = 0; j < n; ++j) {
    rep.honest[j] = !byz_[j];
    if (byz_[j]) continue;
    rep.outputs[j] = nodes_[j]->output();
    m_.decode_attempts += nodes_[j]->decode_attempts();
    for (const auto& s : nodes_[j]->notes()) rep.notes.push_back("node " + std::to_string(j) + ": " + s);
  }

  // honest inputs that matter for validity
  std::optional<Bytes> common;
  bool unanimous = true;
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (byz_[j]) continue;
    if (cfg_.protocol == ProtocolKind::Rbc) break;
    if (cfg_.protocol == ProtocolKind::SmallT && j >= committee_size(cfg_.t)) continue;
    if (!inputs_[j]) {
      unanimous = false;
      break;
    }
    if (first) {
      common = inputs_[j];
      first = false;
    } else if (*inputs_[j] != *common) {
      unanimous = false;
    }
  }
  if (cfg_.protocol == ProtocolKind::Rbc) {
    unanimous = !byz_[cfg_.leader] && inputs_[cfg_.leader].has_value();
    if (unanimous) common = inputs_[cfg_.leader];
  }
  if (!unanimous) common.reset();
  rep.common_input = common;

  switch (cfg_.protocol) {
    case ProtocolKind::Acool:
    case ProtocolKind::SmallT:
      rep.expects_termination = true;
      break;
    case ProtocolKind::Rba:
    case ProtocolKind::Rbc:
      rep.expects_termination = common.has_value();
      break;
  }

  Properties& pr = rep.props;
  std::optional<Decision> seen;
  std::size_t outputs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (byz_[j] || !rep.outputs[j]) continue;
    ++outputs;
    if (!seen)
      seen = rep.outputs[j];
    else if (!(*seen == *rep.outputs[j]))
      pr.consistency = false;
  }
  pr.termination = rep.status == RunStatus::Terminated;
  pr.totality = outputs == 0 || outputs == honest_count_;
  if (common) {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (byz_[j] || !rep.outputs[j]) continue;
      if (!rep.outputs[j]->value || *rep.outputs[j]->value != *common) ok = false;
    }
    pr.validity = ok;
  }

  std::map<BuaInstance, std::set<Bytes>> final_one, s1_inputs, s2_inputs;
  std::size_t amin = SIZE_MAX, amax = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (byz_[j]) continue;
    for (const auto& snap : nodes_[j]->bua_snapshots()) {
      if (!snap.input) continue;
      if (snap.vote && snap.s2_at_final && *snap.s2_at_final) final_one[snap.instance].insert(*snap.input);
      if (snap.s1 && *snap.s1) s1_inputs[snap.instance].insert(*snap.input);
      if (snap.s2 && *snap.s2) s2_inputs[snap.instance].insert(*snap.input);
      if (snap.vote_collision) rep.notes.push_back("node " + std::to_string(j) + ": vote collision");
    }
    const bool participant = cfg_.protocol == ProtocolKind::Acool ||
                             (cfg_.protocol == ProtocolKind::SmallT && j < committee_size(cfg_.t));
    if (participant) {
      amin = std::min(amin, nodes_[j]->abba_instances());
      amax = std::max(amax, nodes_[j]->abba_instances());
    }
  }
  for (const auto& [inst, ws] : final_one)
    if (ws.size() > 1) pr.unique_agreement = false;
  for (const auto& [inst, ws] : s1_inputs)
    if (ws.size() > 2) pr.at_most_two_s1 = false;
  for (const auto& [inst, ws] : s2_inputs)
    if (ws.size() > 1) pr.single_s2_value = false;
  if (amax > 0) {
    m_.abba_instances_min = amin;
    m_.abba_instances_max = amax;
    pr.single_abba = amin == 1 && amax == 1;
  }
  rep.metrics = m_;
  rep.events = std::move(events_);
}

nlohmann::ordered_json decision_json(const std::optional<Decision>& d) {
  if (!d) return nullptr;
  if (!d->value) return "bottom";
  return to_hex(*d->value);
}

}  // namespace

std::string_view to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Acool: return "acool";
    case ProtocolKind::Rba: return "rba";
    case ProtocolKind::Rbc: return "rbc";
    case ProtocolKind::SmallT: return "small_t";
  }
  return "?";
}

std::string_view to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::CrashSilent: return "crash_silent";
    case AdversaryKind::EquivocateSymbols: return "equivocate_symbols";
    case AdversaryKind::GarbageShares: return "garbage_shares";
    case AdversaryKind::WithholdFromSubset: return "withhold_from_subset";
    case AdversaryKind::SplitInputBuilder: return "split_input_builder";
    case AdversaryKind::ReadySpammer: return "ready_spammer";
    case AdversaryKind::RandomByzantine: return "random_byzantine";
  }
  return "?";
}

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::Uniform: return "uniform";
    case SchedulerKind::LifoBiased: return "lifo";
    case SchedulerKind::AdversaryDirected: return "adversary";
    case SchedulerKind::Fifo: return "fifo";
  }
  return "?";
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated: return "terminated";
    case RunStatus::Quiescent: return "quiescent";
    case RunStatus::EventCap: return "event_cap";
  }
  return "?";
}

std::string_view to_string(AbbaKind k) { return k == AbbaKind::Oracle ? "oracle" : "coin"; }

ProtocolKind parse_protocol(std::string_view s) { return parse_enum(s, kProtocols, "protocol"); }
AdversaryKind parse_adversary(std::string_view s) { return parse_enum(s, kAdversaries, "adversary"); }
SchedulerKind parse_scheduler(std::string_view s) { return parse_enum(s, kSchedulers, "scheduler"); }
AbbaKind parse_abba(std::string_view s) { return parse_enum(s, kAbbas, "abba kind"); }

const std::vector<AdversaryKind>& adversary_catalog() {
  static const std::vector<AdversaryKind> all(kAdversaries.begin() + 1, kAdversaries.end());
  return all;
}

const std::vector<SchedulerKind>& scheduler_catalog() {
  static const std::vector<SchedulerKind> all(kSchedulers.begin(), kSchedulers.end() - 1);
  return all;
}

SplitPartition default_split_partition(std::size_t n, std::size_t t) {
  if (n < 3 * t + 1) throw Error(ErrorCode::ResilienceViolation, "n < 3t + 1");
  return {n - 2 * t, t, t};
}

SimConfig scenario_split_input(std::size_t n, std::size_t t, std::optional<SplitPartition> partition,
                               std::uint64_t seed, std::size_t msg_len_bits) {
  const SplitPartition p = partition ? *partition : default_split_partition(n, t);
  if (p.a1 + p.a2 + p.f != n || p.f > t || p.a1 == 0)
    throw Error(ErrorCode::InvalidPartition, "partition sizes must sum to n with |F| <= t");
  if (n < 3 * t + 1) throw Error(ErrorCode::ResilienceViolation, "n < 3t + 1");
  SimConfig cfg;
  cfg.n = n;
  cfg.t = t;
  cfg.seed = seed;
  cfg.msg_len_bits = msg_len_bits;
  cfg.protocol = ProtocolKind::Acool;
  cfg.adversary = AdversaryKind::WithholdFromSubset;
  std::mt19937_64 rng(splitmix64(seed));
  const Bytes w1 = random_value(rng, cfg.payload_bytes());
  Bytes w2 = random_value(rng, cfg.payload_bytes());
  if (w2 == w1) w2[0] ^= 1;
  cfg.inputs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto id = static_cast<NodeId>(j);
    if (j < p.a1) {
      cfg.inputs[j] = w1;
      cfg.victims.push_back(id);
    } else {
      cfg.inputs[j] = w2;
      if (j >= p.a1 + p.a2) cfg.byzantine.push_back(id);
    }
  }
  return cfg;
}

CodeParams run_params(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.protocol == ProtocolKind::SmallT)
    return params_for_payload(committee_size(cfg.t), cfg.t, cfg.payload_bytes());
  return params_for_payload(cfg.n, cfg.t, cfg.payload_bytes());
}

double complexity_bound(const SimConfig& cfg) {
  const CodeParams p = params_for_payload(cfg.n, cfg.t, cfg.payload_bytes());
  const double nl = static_cast<double>(cfg.n) * static_cast<double>(cfg.msg_len_bits);
  const double ntlogq =
      static_cast<double>(cfg.n) * static_cast<double>(cfg.t) * std::log2(static_cast<double>(p.q));
  return std::max(nl, ntlogq);
}

RunReport run(const SimConfig& cfg) { return Simulator(cfg).run(); }

std::string report_json(const RunReport& r, bool include_events) {
  using nlohmann::ordered_json;
  ordered_json j;
  const SimConfig& c = r.config;
  j["config"] = {{"protocol", to_string(c.protocol)},
                 {"n", c.n},
                 {"t", c.t},
                 {"len", c.msg_len_bits},
                 {"seed", c.seed},
                 {"adversary", to_string(c.adversary)},
                 {"scheduler", to_string(c.scheduler)},
                 {"abba", to_string(c.abba)},
                 {"skip_brba", c.skip_brba},
                 {"legacy_cool", c.legacy_cool},
                 {"count_abba_bits", c.count_abba_bits}};
  j["code"] = {{"n", r.params.n},
               {"k", r.params.k},
               {"q", r.params.q},
               {"chunks", r.params.chunks},
               {"symbol_bits", r.params.symbol_bits()}};
  j["status"] = to_string(r.status);
  j["steps"] = r.steps;
  ordered_json outs = ordered_json::array();
  for (std::size_t i = 0; i < r.outputs.size(); ++i) {
    outs.push_back({{"node", i}, {"honest", static_cast<bool>(r.honest[i])},
                    {"output", r.honest[i] ? decision_json(r.outputs[i]) : ordered_json(nullptr)}});
  }
  j["outputs"] = outs;
  j["oracle_decision"] = r.oracle_decision ? ordered_json(*r.oracle_decision) : ordered_json(nullptr);
  const Metrics& m = r.metrics;
  ordered_json by_tag = ordered_json::object();
  for (std::size_t i = 0; i < kMsgTagCount; ++i)
    if (m.msgs_by_tag[i] > 0)
      by_tag[std::string(tag_name(static_cast<MsgTag>(i)))] = {{"messages", m.msgs_by_tag[i]},
                                                                {"bits", m.bits_by_tag[i]}};
  j["metrics"] = {{"bits_total", m.bits_total},
                  {"serialized_bits", m.serialized_bits},
                  {"ideal_bits", m.ideal_bits},
                  {"messages", m.messages},
                  {"oracle_bits", m.oracle_bits},
                  {"by_tag", by_tag},
                  {"egress", m.egress},
                  {"decode_attempts", m.decode_attempts},
                  {"max_round", m.max_round},
                  {"max_delay", m.max_delay},
                  {"abba_instances", {m.abba_instances_min, m.abba_instances_max}}};
  const Properties& p = r.props;
  j["properties"] = {{"consistency", p.consistency},
                     {"validity", p.validity ? ordered_json(*p.validity) : ordered_json(nullptr)},
                     {"termination", p.termination},
                     {"totality", p.totality},
                     {"unique_agreement", p.unique_agreement},
                     {"at_most_two_s1", p.at_most_two_s1},
                     {"single_s2_value", p.single_s2_value},
                     {"single_abba", p.single_abba}};
  j["liveness_failure"] = r.liveness_failure();
  j["notes"] = r.notes;
  if (include_events) j["events"] = events_ndjson(r);
  return j.dump(2);
}

std::string events_ndjson(const RunReport& r) {
  std::string out;
  for (const EventRecord& e : r.events) {
    nlohmann::ordered_json j = {{"step", e.step}, {"from", e.from},   {"to", e.to},
                                {"tag", tag_name(e.tag)}, {"bits", e.bits}, {"round", e.round}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string metrics_csv_header() {
  return "protocol,n,t,len,seed,adversary,scheduler,abba,status,steps,bits_total,serialized_bits,"
         "ideal_bits,messages,decode_attempts,max_round,consistency,validity,liveness_failure";
}

std::string metrics_csv_row(const RunReport& r) {
  const SimConfig& c = r.config;
  const Metrics& m = r.metrics;
  std::ostringstream os;
  os << to_string(c.protocol) << ',' << c.n << ',' << c.t << ',' << c.msg_len_bits << ',' << c.seed << ','
     << to_string(c.adversary) << ',' << to_string(c.scheduler) << ',' << to_string(c.abba) << ','
     << to_string(r.status) << ',' << r.steps << ',' << m.bits_total << ',' << m.serialized_bits << ','
     << m.ideal_bits << ',' << m.messages << ',' << m.decode_attempts << ',' << m.max_round << ','
     << (r.props.consistency ? 1 : 0) << ','
     << (r.props.validity ? (*r.props.validity ? "1" : "0") : "") << ',' << (r.liveness_failure() ? 1 : 0);
  return os.str();
}

}  // namespace acool
