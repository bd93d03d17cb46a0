#pragma once

#include <optional>

#include "acool/bua.hpp"
#include "acool/codec.hpp"
#include "acool/node.hpp"

namespace acool {

/// READY amplification (t+1) and decision (2t+1) over one bit; a sender is
/// counted once across both bits.
class ReadyTally {
 public:
  explicit ReadyTally(std::size_t n) : seen_(n), from_{NodeSet(n), NodeSet(n)} {}

  /// Returns false for repeat senders.
  bool add(NodeId from, bool b) {
    if (!seen_.insert(from)) return false;
    from_[b].insert(from);
    return true;
  }
  std::size_t count(bool b) const { return from_[b].size(); }

 private:
  NodeSet seen_;
  NodeSet from_[2];
};

/// Binary reliable agreement on the vote followed by the honest-majority
/// distributed multicast that turns v_out = 1 into the agreed message.
class ReadyHmdm {
 public:
  ReadyHmdm(CodeParams params, NodeId self);

  bool ready_sent() const { return ready_.has_value(); }
  const std::optional<bool>& ready_bit() const { return ready_; }
  void send_ready(bool b, Outbox& out);
  void on_ready(NodeId from, bool b, Outbox& out);
  /// Sets v_out directly (ABBA with totality, no READY round).
  void set_vout(bool b);
  /// Enters the dissemination phase without a vote (external binary input 1).
  void force_ph3() { ph3_requested_ = true; }

  void on_correct_symbol(NodeId from, const Symbol& y);
  /// Harvests y_j^(j) into the final accumulator when j is in S_1^[2].
  void on_bua_event(const Bua& bua, const BuaEvent& e);
  /// Runs the output logic; call after every state change.
  void advance(const Bua& bua, Outbox& out);

  const std::optional<bool>& v_out() const { return v_out_; }
  bool ph3() const { return ph3_; }
  const std::optional<Decision>& output() const { return output_; }
  bool terminated() const { return output_.has_value(); }
  const OecAccumulator& oec() const { return oec_; }
  const std::optional<Symbol>& calibrated() const { return calibrated_; }

 private:
  void harvest(const Bua& bua, NodeId j);
  bool try_calibrate(const Bua& bua, Outbox& out);

  CodeParams params_;
  NodeId self_;
  std::optional<bool> ready_;
  ReadyTally tally_;
  std::optional<bool> v_out_;
  bool ph3_requested_ = false;
  bool ph3_ = false;
  bool waiting_calibration_ = false;
  bool waiting_oec_ = false;
  std::optional<Symbol> calibrated_;
  NodeSet correct_seen_;
  OecAccumulator oec_;
  std::optional<Decision> output_;
};

}  // namespace acool
