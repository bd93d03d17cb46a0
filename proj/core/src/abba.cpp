#include "acool/abba.hpp"

#include "acool/rng.hpp"

namespace acool {

bool OracleAbba::input(bool b, Outbox&) {
  if (input_) return false;
  input_ = b;
  return true;
}

void OracleAbba::deliver(bool b) {
  if (!output_) output_ = b;
}

bool oracle_abba_decide(const std::map<NodeId, bool>& inputs, bool adversary_hint) {
  if (inputs.empty()) throw Error(ErrorCode::InvalidConfig, "oracle decision needs an honest input");
  for (const auto& [id, b] : inputs)
    if (b == adversary_hint) return adversary_hint;
  return inputs.begin()->second;
}

bool CoinOracle::coin(std::uint64_t instance, std::uint32_t round) const {
  return (splitmix64(seed_ ^ splitmix64(instance * 0x100000001b3ULL + round)) & 1) != 0;
}

CoinAbba::CoinAbba(std::size_t n, std::size_t t, CoinOracle coin, std::uint64_t instance)
    : n_(n), t_(t), coin_(coin), instance_(instance) {}

CoinAbba::Round& CoinAbba::at(std::uint32_t r) {
  auto it = rounds_.find(r);
  if (it != rounds_.end()) return it->second;
  Round& fresh = rounds_[r];
  for (int b = 0; b < 2; ++b) {
    fresh.est_from[b] = NodeSet(n_);
    fresh.aux_from[b] = NodeSet(n_);
  }
  fresh.aux_seen = NodeSet(n_);
  return fresh;
}

void CoinAbba::send_est(std::uint32_t r, bool b, Outbox& out) {
  Round& R = at(r);
  if (R.est_sent[b]) return;
  R.est_sent[b] = true;
  out.broadcast(n_, AbbaMsg{AbbaStep::Est, r, b});
}

bool CoinAbba::input(bool b, Outbox& out) {
  if (input_) return false;
  input_ = b;
  round_ = 1;
  est_ = b;
  send_est(1, b, out);
  progress(out);
  return true;
}

void CoinAbba::handle(NodeId from, const AbbaMsg& msg, Outbox& out) {
  if (from >= n_ || msg.round == 0 || halted_) return;
  Round& R = at(msg.round);
  const bool b = msg.bit;
  if (msg.step == AbbaStep::Est) {
    if (!R.est_from[b].insert(from)) return;
    if (R.est_from[b].size() >= t_ + 1) send_est(msg.round, b, out);
    if (R.est_from[b].size() >= 2 * t_ + 1) R.bin[b] = true;
  } else {
    if (!R.aux_seen.insert(from)) return;
    R.aux_from[b].insert(from);
  }
  progress(out);
}

void CoinAbba::progress(Outbox& out) {
  while (round_ > 0 && !halted_) {
    Round& R = at(round_);
    if (!R.aux_sent && (R.bin[0] || R.bin[1])) {
      const bool w = R.bin[est_] ? est_ : !est_;
      R.aux_sent = w;
      out.broadcast(n_, AbbaMsg{AbbaStep::Aux, round_, w});
    }
    if (!R.aux_sent) return;

    std::size_t support = 0;
    for (int b = 0; b < 2; ++b)
      if (R.bin[b]) support += R.aux_from[b].size();
    if (support < n_ - t_) return;
    const bool has0 = R.bin[0] && !R.aux_from[0].empty();
    const bool has1 = R.bin[1] && !R.aux_from[1].empty();
    const bool s = coin_.coin(instance_, round_);
    if (has0 != has1) {
      const bool v = has1;
      est_ = v;
      if (v == s && !output_) {
        output_ = v;
        decided_round_ = round_;
        halt_round_ = round_ + 1;
        while (coin_.coin(instance_, halt_round_) != v) ++halt_round_;
      }
    } else {
      est_ = s;
    }
    if (output_ && round_ >= halt_round_) {
      halted_ = true;
      return;
    }
    ++round_;
    send_est(round_, est_, out);
  }
}

std::unique_ptr<Abba> make_abba(AbbaKind kind, std::size_t n, std::size_t t, std::uint64_t coin_seed) {
  if (kind == AbbaKind::Oracle) return std::make_unique<OracleAbba>();
  return std::make_unique<CoinAbba>(n, t, CoinOracle(coin_seed));
}

}  // namespace acool
