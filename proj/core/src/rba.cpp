#include "acool/rba.hpp"

namespace acool {

RbaNode::RbaNode(CodeParams params, NodeId self)
    : params_(params), bua_({BuaInstance::Standalone, params, self}), core_(params, self) {}

void RbaNode::input(const Bytes& w, Outbox& out) {
  if (terminated()) return;
  BuaEvents ev;
  if (!bua_.input(w, out, ev)) {
    note("input ignored");
    return;
  }
  on_bua(ev, out);
  core_.advance(bua_, out);
}

void RbaNode::handle(NodeId from, const ProtocolMsg& msg, Outbox& out) {
  if (terminated() || from >= params_.n) return;
  BuaEvents ev;
  if (const auto* m = std::get_if<SymbolMsg>(&msg)) {
    if (m->instance == BuaInstance::Standalone) bua_.on_symbol(from, *m, out, ev);
  } else if (const auto* m = std::get_if<IndicatorMsg>(&msg)) {
    if (m->instance == BuaInstance::Standalone) bua_.on_indicator(from, m->phase, m->bit, out, ev);
  } else if (const auto* m = std::get_if<ReadyMsg>(&msg)) {
    core_.on_ready(from, m->bit, out);
  } else if (const auto* m = std::get_if<CorrectSymbolMsg>(&msg)) {
    core_.on_correct_symbol(from, m->y);
  }
  on_bua(ev, out);
  core_.advance(bua_, out);
}

void RbaNode::trigger_ph3(Outbox& out) {
  core_.force_ph3();
  core_.advance(bua_, out);
}

void RbaNode::on_bua(const BuaEvents& ev, Outbox& out) {
  for (const BuaEvent& e : ev) {
    core_.on_bua_event(bua_, e);
    if (e.kind == BuaEvent::Kind::Final) s2_at_final_ = bua_.s2();
    if (e.kind == BuaEvent::Kind::SetsUpdated && e.phase == 2) check_ready(out);
  }
}

void RbaNode::check_ready(Outbox& out) {
  const std::size_t quorum = params_.n - params_.t;
  const bool one = bua_.S(2, true).size() >= quorum;
  const bool zero = bua_.S(2, false).size() >= quorum;
  if (!core_.ready_sent()) {
    if (one || zero) {
      const bool vstar = one;
      core_.send_ready(vstar, out);
      if (on_vstar_) on_vstar_(vstar);
    }
  } else if (!conflict_logged_ && one && zero) {
    conflict_logged_ = true;
    note("both phase-2 sets reached n - t");
  }
}

std::vector<BuaSnapshot> RbaNode::bua_snapshots() const {
  return {{BuaInstance::Standalone, bua_.w(), bua_.s1(), bua_.s2(), bua_.vote(), s2_at_final_,
           bua_.vote_collision()}};
}

RbcNode::RbcNode(CodeParams params, NodeId self, NodeId leader, RbcMode mode)
    : params_(params),
      self_(self),
      leader_(leader),
      mode_(mode),
      initial_seen_(params.n),
      dispersal_(params, true),
      inner_(params, self) {
  if (leader >= params.n) throw Error(ErrorCode::InvalidConfig, "leader id out of range");
}

void RbcNode::input(const Bytes& w, Outbox& out) {
  if (self_ != leader_ || w.empty() || leader_input_) {
    note("input rejected");
    return;
  }
  leader_input_ = true;
  if (mode_ == RbcMode::Balanced) {
    const auto shares = ecc_encode(params_, w);
    for (std::size_t j = 0; j < params_.n; ++j)
      out.send(static_cast<NodeId>(j), LeaderMsg{shares[j].elems});
  } else {
    out.broadcast(params_.n, LeaderMessageMsg{w});
  }
}

void RbcNode::handle(NodeId from, const ProtocolMsg& msg, Outbox& out) {
  if (terminated() || from >= params_.n) return;
  if (const auto* m = std::get_if<LeaderMsg>(&msg)) {
    if (from == leader_ && mode_ == RbcMode::Balanced && !got_leader_) {
      got_leader_ = true;
      out.broadcast(params_.n, InitialMsg{m->y});
    }
  } else if (const auto* m = std::get_if<InitialMsg>(&msg)) {
    if (mode_ == RbcMode::Balanced && !dispersal_.done() && initial_seen_.insert(from)) {
      if (auto w = dispersal_.submit({from + 1, m->y})) adopt(*w, out);
    }
  } else if (const auto* m = std::get_if<LeaderMessageMsg>(&msg)) {
    if (from == leader_ && mode_ == RbcMode::Unbalanced && !got_leader_) {
      got_leader_ = true;
      if (!m->w.empty()) adopt(m->w, out);
    }
  } else {
    inner_.handle(from, msg, out);
  }
}

void RbcNode::adopt(const Bytes& w, Outbox& out) {
  if (w_i_) return;
  w_i_ = w;
  inner_.input(w, out);
}

}  // namespace acool
