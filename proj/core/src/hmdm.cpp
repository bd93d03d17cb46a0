#include "acool/hmdm.hpp"

#include <map>

namespace acool {

ReadyHmdm::ReadyHmdm(CodeParams params, NodeId self)
    : params_(params), self_(self), tally_(params.n), correct_seen_(params.n), oec_(params) {}

void ReadyHmdm::send_ready(bool b, Outbox& out) {
  if (ready_) return;
  ready_ = b;
  out.broadcast(params_.n, ReadyMsg{b});
}

void ReadyHmdm::on_ready(NodeId from, bool b, Outbox& out) {
  if (from >= params_.n || !tally_.add(from, b)) return;
  const std::size_t t = params_.t;
  if (tally_.count(b) >= t + 1) send_ready(b, out);
  if (!v_out_ && tally_.count(b) >= 2 * t + 1) v_out_ = b;
}

void ReadyHmdm::set_vout(bool b) {
  if (!v_out_) v_out_ = b;
}

void ReadyHmdm::on_correct_symbol(NodeId from, const Symbol& y) {
  if (from >= params_.n || oec_.done() || !correct_seen_.insert(from)) return;
  oec_.submit({from + 1, y});
}

void ReadyHmdm::harvest(const Bua& bua, NodeId j) {
  if (oec_.done() || !bua.S(2, true).contains(j)) return;
  const DeliveredPair* pair = bua.delivered(j);
  if (pair == nullptr || oec_.contains(j + 1)) return;
  oec_.submit({j + 1, pair->own});
}

void ReadyHmdm::on_bua_event(const Bua& bua, const BuaEvent& e) {
  using K = BuaEvent::Kind;
  if (e.kind == K::SymbolDelivered || (e.kind == K::SetsUpdated && e.phase == 2 && e.bit))
    harvest(bua, e.from);
}

bool ReadyHmdm::try_calibrate(const Bua& bua, Outbox& out) {
  std::map<Symbol, std::size_t> votes;
  for (NodeId j : bua.S(2, true).members()) {
    const DeliveredPair* pair = bua.delivered(j);
    if (pair == nullptr) continue;
    if (++votes[pair->for_me] >= params_.t + 1) {
      calibrated_ = pair->for_me;
      out.broadcast(params_.n, CorrectSymbolMsg{*calibrated_});
      return true;
    }
  }
  return false;
}

void ReadyHmdm::advance(const Bua& bua, Outbox& out) {
  if (terminated()) return;
  if (v_out_ && !*v_out_) {
    output_ = Decision{};
    return;
  }
  if (!ph3_ && ((v_out_ && *v_out_) || ph3_requested_)) {
    ph3_ = true;
    if (bua.s2() && *bua.s2()) {
      output_ = Decision{bua.w()};
      return;
    }
    waiting_calibration_ = true;
  }
  if (waiting_calibration_ && try_calibrate(bua, out)) {
    waiting_calibration_ = false;
    waiting_oec_ = true;
  }
  if (waiting_oec_ && oec_.done()) output_ = Decision{oec_.decoded()};
}

}  // namespace acool
