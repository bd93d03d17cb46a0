#include "adversary.hpp"

namespace acool::detail {

namespace {

template <class F>
ProtocolMsg map_symbols(ProtocolMsg msg, F&& f) {
  std::visit(
      [&](auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SymbolMsg>) {
          f(m.for_receiver);
          f(m.own);
        } else if constexpr (std::is_same_v<M, ShmdmMsg>) {
          if (m.y) f(*m.y);
        } else if constexpr (std::is_same_v<M, NewSymbolMsg> || std::is_same_v<M, CorrectSymbolMsg> ||
                             std::is_same_v<M, LeaderMsg> || std::is_same_v<M, InitialMsg>) {
          f(m.y);
        } else if constexpr (std::is_same_v<M, LeaderMessageMsg>) {
          if (!m.w.empty()) m.w[0] ^= 0x5a;
        }
      },
      msg);
  return msg;
}

bool is_flag(const ProtocolMsg& msg) {
  return std::holds_alternative<IndicatorMsg>(msg) || std::holds_alternative<ReadyMsg>(msg) ||
         std::holds_alternative<AbbaMsg>(msg);
}

}  // namespace

Adversary::Adversary(AdversaryKind kind, CodeParams params, std::size_t n, std::vector<bool> byzantine,
                     std::vector<bool> victim, std::uint64_t seed)
    : kind_(kind),
      params_(params),
      n_(n),
      byz_(std::move(byzantine)),
      victim_(std::move(victim)),
      group_b_(n, false),
      rng_(seed) {
  std::vector<NodeId> honest;
  for (std::size_t j = 0; j < n; ++j)
    if (!byz_[j]) honest.push_back(static_cast<NodeId>(j));
  for (std::size_t i = honest.size() / 2; i < honest.size(); ++i) group_b_[honest[i]] = true;
}

Symbol Adversary::garbage() {
  Symbol s(params_.chunks);
  for (auto& e : s) e = static_cast<Elem>(rng_() % params_.q);
  return s;
}

MsgPtr Adversary::garbled(const ProtocolMsg& msg) {
  return std::make_shared<const ProtocolMsg>(map_symbols(msg, [&](Symbol& s) { s = garbage(); }));
}

MsgPtr Adversary::perturbed(const ProtocolMsg& msg) {
  return std::make_shared<const ProtocolMsg>(map_symbols(msg, [&](Symbol& s) {
    if (!s.empty()) s[0] = (s[0] + 1) % params_.q;
  }));
}

MsgPtr Adversary::flipped(const ProtocolMsg& msg) {
  ProtocolMsg copy = msg;
  std::visit(
      [](auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, IndicatorMsg> || std::is_same_v<M, ReadyMsg> ||
                      std::is_same_v<M, AbbaMsg>)
          m.bit = !m.bit;
      },
      copy);
  return std::make_shared<const ProtocolMsg>(std::move(copy));
}

ProtocolMsg Adversary::random_message() {
  const bool bit = rng_() & 1;
  const auto inst = static_cast<BuaInstance>(rng_() % 3);
  switch (rng_() % 8) {
    case 0: return SymbolMsg{inst, garbage(), garbage()};
    case 1: return IndicatorMsg{inst, static_cast<std::uint8_t>(1 + rng_() % 2), bit};
    case 2: return NewSymbolMsg{garbage()};
    case 3: return ReadyMsg{bit};
    case 4: return CorrectSymbolMsg{garbage()};
    case 5: return ShmdmMsg{garbage()};
    case 6: return InitialMsg{garbage()};
    default: return AbbaMsg{(rng_() & 1) ? AbbaStep::Est : AbbaStep::Aux,
                            static_cast<std::uint32_t>(1 + rng_() % 3), bit};
  }
}

std::vector<Envelope> Adversary::opening(NodeId) {
  std::vector<Envelope> out;
  if (kind_ != AdversaryKind::ReadySpammer) return out;
  for (std::size_t j = 0; j < n_; ++j) {
    const auto to = static_cast<NodeId>(j);
    const bool bit = (j % 2) == 1;
    auto push = [&](ProtocolMsg m) { out.push_back({to, std::make_shared<const ProtocolMsg>(std::move(m))}); };
    push(ReadyMsg{bit});
    for (auto inst : {BuaInstance::Standalone, BuaInstance::First, BuaInstance::Second}) {
      push(IndicatorMsg{inst, 1, bit});
      push(IndicatorMsg{inst, 2, !bit});
      push(SymbolMsg{inst, garbage(), garbage()});
    }
    push(AbbaMsg{AbbaStep::Est, 1, bit});
    push(AbbaMsg{AbbaStep::Est, 1, !bit});
    push(AbbaMsg{AbbaStep::Aux, 1, bit});
  }
  return out;
}

std::vector<Envelope> Adversary::transform(NodeId, std::size_t shadow, std::vector<Envelope> env) {
  std::vector<Envelope> out;
  out.reserve(env.size());
  switch (kind_) {
    case AdversaryKind::None:
      return env;
    case AdversaryKind::CrashSilent:
      return out;
    case AdversaryKind::EquivocateSymbols:
      for (auto& e : env) {
        if (e.to % 2 == 1 && symbol_count(*e.msg) > 0) e.msg = perturbed(*e.msg);
        out.push_back(std::move(e));
      }
      return out;
    case AdversaryKind::GarbageShares:
      for (auto& e : env) {
        if (symbol_count(*e.msg) > 0 || std::holds_alternative<LeaderMessageMsg>(*e.msg))
          e.msg = garbled(*e.msg);
        out.push_back(std::move(e));
      }
      return out;
    case AdversaryKind::WithholdFromSubset:
      for (auto& e : env)
        if (!is_victim(e.to)) out.push_back(std::move(e));
      return out;
    case AdversaryKind::SplitInputBuilder:
      for (auto& e : env) {
        const bool to_b = e.to < group_b_.size() && group_b_[e.to];
        if (to_b == (shadow == 1)) out.push_back(std::move(e));
      }
      return out;
    case AdversaryKind::ReadySpammer:
      for (auto& e : env) {
        if (is_flag(*e.msg)) continue;
        if (symbol_count(*e.msg) > 0) e.msg = garbled(*e.msg);
        out.push_back(std::move(e));
      }
      return out;
    case AdversaryKind::RandomByzantine:
      for (auto& e : env) {
        const auto roll = rng_() % 100;
        if (roll < 15) continue;
        if (roll < 35) {
          e.msg = is_flag(*e.msg) ? flipped(*e.msg) : garbled(*e.msg);
        } else if (roll < 45) {
          out.push_back(e);
        }
        out.push_back(std::move(e));
        if (rng_() % 100 < 5)
          out.push_back({static_cast<NodeId>(rng_() % n_), std::make_shared<const ProtocolMsg>(random_message())});
      }
      return out;
  }
  return out;
}

}  // namespace acool::detail
