#include "acool/bua.hpp"

namespace acool {

Bua::Bua(BuaConfig cfg)
    : cfg_(std::move(cfg)),
      l0_(cfg_.params.n),
      l1_(cfg_.params.n),
      s1p1_(cfg_.params.n),
      s0p1_(cfg_.params.n),
      s1p2_(cfg_.params.n),
      s0p2_(cfg_.params.n),
      seen_symbol_(cfg_.params.n),
      seen_si1_(cfg_.params.n),
      seen_si2_(cfg_.params.n),
      delivered_(cfg_.params.n) {}

const NodeSet& Bua::S(std::uint8_t phase, bool bit) const {
  if (phase == 1) return bit ? s1p1_ : s0p1_;
  return bit ? s1p2_ : s0p2_;
}

const DeliveredPair* Bua::delivered(NodeId j) const {
  if (j >= delivered_.size() || !delivered_[j]) return nullptr;
  return &*delivered_[j];
}

const Symbol* Bua::own_symbol() const {
  if (!enc_done_) return nullptr;
  return &shares_[cfg_.self].elems;
}

bool Bua::input(const Bytes& w, Outbox& out, BuaEvents& ev) {
  if (w.empty() || w_) return false;
  w_ = w;
  shares_ = ecc_encode(cfg_.params, w);
  const Symbol& mine = shares_[cfg_.self].elems;
  for (std::size_t j = 0; j < n(); ++j)
    out.send(static_cast<NodeId>(j), SymbolMsg{cfg_.instance, shares_[j].elems, mine});
  enc_done_ = true;

  auto queued = std::exchange(pending_, {});
  for (auto& [from, msg] : queued) classify(from, msg);
  evaluate(out, ev);
  return true;
}

void Bua::on_symbol(NodeId from, const SymbolMsg& msg, Outbox& out, BuaEvents& ev) {
  if (from >= n() || !seen_symbol_.insert(from)) return;
  // the pair is delivered at once; only the L-set comparison waits for the own encoding
  if (well_formed(cfg_.params, msg.for_receiver) && well_formed(cfg_.params, msg.own)) {
    delivered_[from] = DeliveredPair{msg.for_receiver, msg.own};
    ev.push_back({BuaEvent::Kind::SymbolDelivered, from, 0, false});
  }
  if (!enc_done_) {
    pending_.emplace_back(from, msg);
    return;
  }
  classify(from, msg);
  evaluate(out, ev);
}

void Bua::classify(NodeId from, const SymbolMsg& msg) {
  const bool match =
      msg.for_receiver == shares_[cfg_.self].elems && msg.own == shares_[from].elems;
  (match ? l1_ : l0_).insert(from);
}

void Bua::on_indicator(NodeId from, std::uint8_t phase, bool bit, Outbox& out, BuaEvents& ev) {
  if (from >= n() || (phase != 1 && phase != 2)) return;
  NodeSet& seen = phase == 1 ? seen_si1_ : seen_si2_;
  if (!seen.insert(from)) return;
  NodeSet& target = phase == 1 ? (bit ? s1p1_ : s0p1_) : (bit ? s1p2_ : s0p2_);
  target.insert(from);
  ev.push_back({BuaEvent::Kind::SetsUpdated, from, phase, bit});
  evaluate(out, ev);
}

void Bua::broadcast_indicator(std::uint8_t phase, bool bit, Outbox& out) {
  out.broadcast(n(), IndicatorMsg{cfg_.instance, phase, bit});
}

void Bua::evaluate(Outbox& out, BuaEvents& ev) {
  const std::size_t quorum = n() - t();
  if (!s1_ && l1_.size() >= quorum) {
    s1_ = true;
    broadcast_indicator(1, true, out);
    ev.push_back({BuaEvent::Kind::S1Set, cfg_.self, 1, true});
  }
  if (!s1_ && l0_.size() >= t() + 1) {
    s1_ = false;
    broadcast_indicator(1, false, out);
    ev.push_back({BuaEvent::Kind::S1Set, cfg_.self, 1, false});
  }
  if (!s2_ && ((s1_ && !*s1_) || s0p1_.union_size(l0_) >= t() + 1)) {
    s2_ = false;
    broadcast_indicator(2, false, out);
    ev.push_back({BuaEvent::Kind::S2Set, cfg_.self, 2, false});
  }
  if (!s2_ && s1_ && *s1_ && s1p1_.intersection_size(l1_) >= quorum) {
    s2_ = true;
    broadcast_indicator(2, true, out);
    ev.push_back({BuaEvent::Kind::S2Set, cfg_.self, 2, true});
  }
  const bool one = s1p2_.size() >= quorum;
  const bool zero = s0p2_.size() >= t() + 1;
  if (!vote_) {
    if (one) {
      vote_ = true;
      ev.push_back({BuaEvent::Kind::Final, cfg_.self, 2, true});
    } else if (zero) {
      vote_ = false;
      ev.push_back({BuaEvent::Kind::Final, cfg_.self, 2, false});
    }
  }
  if (vote_ && one && zero) vote_collision_ = true;
}

}  // namespace acool
