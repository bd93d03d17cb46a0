#include "acool/acool.hpp"

namespace acool {

AcoolNode::AcoolNode(CodeParams params, NodeId self, AcoolOptions opt)
    : params_(params),
      self_(self),
      opt_(opt),
      bua1_({BuaInstance::First, params, self}),
      bua2_({BuaInstance::Second, params, self}),
      oec_new_(params, true),
      new_seen_(params.n),
      abba_(make_abba(opt.abba, params.n, params.t, opt.coin_seed)),
      core_(params, self) {}

void AcoolNode::input(const Bytes& w, Outbox& out) {
  if (terminated()) return;
  if (w.empty() || w_input_) {
    note("input ignored");
    return;
  }
  w_input_ = w;
  BuaEvents ev;
  bua1_.input(w, out, ev);
  on_bua1(ev, out);
  settle(out);
}

void AcoolNode::handle(NodeId from, const ProtocolMsg& msg, Outbox& out) {
  if (terminated() || from >= params_.n) return;
  if (const auto* m = std::get_if<SymbolMsg>(&msg)) {
    BuaEvents ev;
    if (m->instance == BuaInstance::First) {
      bua1_.on_symbol(from, *m, out, ev);
      on_bua1(ev, out);
    } else if (m->instance == BuaInstance::Second && !opt_.legacy_cool) {
      bua2_.on_symbol(from, *m, out, ev);
      on_bua2(ev, out);
    }
  } else if (const auto* m = std::get_if<IndicatorMsg>(&msg)) {
    BuaEvents ev;
    if (m->instance == BuaInstance::First) {
      bua1_.on_indicator(from, m->phase, m->bit, out, ev);
      on_bua1(ev, out);
    } else if (m->instance == BuaInstance::Second && !opt_.legacy_cool) {
      bua2_.on_indicator(from, m->phase, m->bit, out, ev);
      on_bua2(ev, out);
    }
  } else if (const auto* m = std::get_if<NewSymbolMsg>(&msg)) {
    if (!opt_.legacy_cool && new_seen_.insert(from)) feed_new(from, m->y, out);
  } else if (const auto* m = std::get_if<ReadyMsg>(&msg)) {
    if (!opt_.skip_brba) core_.on_ready(from, m->bit, out);
  } else if (const auto* m = std::get_if<CorrectSymbolMsg>(&msg)) {
    core_.on_correct_symbol(from, m->y);
  } else if (const auto* m = std::get_if<AbbaMsg>(&msg)) {
    abba_->handle(from, *m, out);
  }
  settle(out);
}

void AcoolNode::on_bua1(const BuaEvents& ev, Outbox& out) {
  using K = BuaEvent::Kind;
  if (opt_.legacy_cool) {
    for (const BuaEvent& e : ev) {
      core_.on_bua_event(bua1_, e);
      if (e.kind == K::Final) {
        s2_at_final_[0] = bua1_.s2();
        give_abba(e.bit, out);
      }
    }
    return;
  }
  for (const BuaEvent& e : ev) {
    switch (e.kind) {
      case K::SymbolDelivered: {
        const DeliveredPair* pair = bua1_.delivered(e.from);
        y_table_.try_emplace(pair->for_me, NodeSet(params_.n)).first->second.insert(e.from);
        if (bua1_.S(1, true).contains(e.from)) feed_new(e.from, pair->own, out);
        check_y_majority(out);
        break;
      }
      case K::SetsUpdated:
        if (e.phase == 1 && e.bit) {
          if (const DeliveredPair* pair = bua1_.delivered(e.from)) feed_new(e.from, pair->own, out);
        } else if (e.phase == 2 && !e.bit) {
          check_y_majority(out);
        }
        break;
      case K::S2Set:
        if (e.bit) {
          if (!bua2_.has_input()) set_w_tilde(*w_input_, out);
        } else {
          give_abba(false, out);
        }
        break;
      case K::Final:
        s2_at_final_[0] = bua1_.s2();
        if (!e.bit) give_abba(false, out);
        break;
      case K::S1Set:
        break;
    }
  }
}

void AcoolNode::on_bua2(const BuaEvents& ev, Outbox& out) {
  for (const BuaEvent& e : ev) {
    core_.on_bua_event(bua2_, e);
    if (e.kind == BuaEvent::Kind::Final) {
      s2_at_final_[1] = bua2_.s2();
      give_abba(e.bit, out);
    }
  }
}

void AcoolNode::feed_new(NodeId j, const Symbol& y, Outbox& out) {
  if (oec_new_.done() || oec_new_.contains(j + 1)) return;
  if (auto w = oec_new_.submit({j + 1, y})) set_w_tilde(*w, out);
}

void AcoolNode::check_y_majority(Outbox& out) {
  if (y_major_ || (bua1_.s1() && *bua1_.s1())) return;
  const std::size_t n = params_.n, t = params_.t;
  const NodeSet& s0p2 = bua1_.S(2, false);
  for (const auto& [y, senders] : y_table_) {
    if (senders.size() >= n - 2 * t && senders.union_size(s0p2) >= n - t) {
      y_major_ = y;
      out.broadcast(n, NewSymbolMsg{y});
      return;
    }
  }
}

void AcoolNode::set_w_tilde(const Bytes& w, Outbox& out) {
  if (bua2_.has_input()) return;
  w_tilde_ = w;
  BuaEvents ev;
  bua2_.input(w, out, ev);
  on_bua2(ev, out);
}

void AcoolNode::give_abba(bool b, Outbox& out) {
  if (abba_->input_bit()) {
    if (*abba_->input_bit() != b) note("abba input race: kept " + std::to_string(*abba_->input_bit()));
    return;
  }
  abba_->input(b, out);
}

void AcoolNode::abba_deliver(bool b, Outbox& out) {
  if (terminated()) return;
  abba_->deliver(b);
  settle(out);
}

void AcoolNode::after_abba(Outbox& out) {
  if (abba_out_handled_ || !abba_->output()) return;
  abba_out_handled_ = true;
  if (opt_.skip_brba)
    core_.set_vout(*abba_->output());
  else
    core_.send_ready(*abba_->output(), out);
}

void AcoolNode::settle(Outbox& out) {
  after_abba(out);
  core_.advance(opt_.legacy_cool ? bua1_ : bua2_, out);
}

std::vector<BuaSnapshot> AcoolNode::bua_snapshots() const {
  std::vector<BuaSnapshot> snaps;
  const Bua* buas[2] = {&bua1_, &bua2_};
  for (int i = 0; i < (opt_.legacy_cool ? 1 : 2); ++i) {
    const Bua& b = *buas[i];
    snaps.push_back({b.config().instance, b.w(), b.s1(), b.s2(), b.vote(), s2_at_final_[i],
                     b.vote_collision()});
  }
  return snaps;
}

std::size_t AcoolNode::decode_attempts() const {
  return oec_new_.decode_attempts() + core_.oec().decode_attempts();
}

}  // namespace acool
