#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "acool/bua.hpp"
#include "acool/hmdm.hpp"
#include "acool/node.hpp"

namespace acool {

/// Multi-valued reliable agreement: unique agreement, READY on an n - t
/// phase-2 quorum, then dissemination.
class RbaNode final : public ProtocolNode {
 public:
  RbaNode(CodeParams params, NodeId self);

  void input(const Bytes& w, Outbox& out) override;
  void handle(NodeId from, const ProtocolMsg& msg, Outbox& out) override;
  const std::optional<Decision>& output() const override { return core_.output(); }
  bool terminated() const override { return core_.terminated(); }

  std::vector<BuaSnapshot> bua_snapshots() const override;
  std::size_t decode_attempts() const override { return core_.oec().decode_attempts(); }

  /// Called with v* when READY is first sent.
  void set_vstar_callback(std::function<void(bool)> cb) { on_vstar_ = std::move(cb); }
  /// External binary input 1: enter dissemination without a vote.
  void trigger_ph3(Outbox& out);

  const Bua& bua() const { return bua_; }
  const ReadyHmdm& core() const { return core_; }

 private:
  void on_bua(const BuaEvents& ev, Outbox& out);
  void check_ready(Outbox& out);

  CodeParams params_;
  Bua bua_;
  ReadyHmdm core_;
  std::function<void(bool)> on_vstar_;
  bool conflict_logged_ = false;
  std::optional<bool> s2_at_final_;
};

enum class RbcMode : std::uint8_t { Balanced, Unbalanced };

/// Reliable broadcast from `leader`, built on RbaNode.
class RbcNode final : public ProtocolNode {
 public:
  RbcNode(CodeParams params, NodeId self, NodeId leader, RbcMode mode = RbcMode::Balanced);

  /// Leader only; empty or non-leader input is rejected.
  void input(const Bytes& w, Outbox& out) override;
  void handle(NodeId from, const ProtocolMsg& msg, Outbox& out) override;
  const std::optional<Decision>& output() const override { return inner_.output(); }
  bool terminated() const override { return inner_.terminated(); }

  std::vector<BuaSnapshot> bua_snapshots() const override { return inner_.bua_snapshots(); }
  std::size_t decode_attempts() const override {
    return dispersal_.decode_attempts() + inner_.decode_attempts();
  }

  const std::optional<Bytes>& w_i() const { return w_i_; }
  NodeId leader() const { return leader_; }

 private:
  void adopt(const Bytes& w, Outbox& out);

  CodeParams params_;
  NodeId self_;
  NodeId leader_;
  RbcMode mode_;
  bool leader_input_ = false;
  bool got_leader_ = false;
  NodeSet initial_seen_;
  OecAccumulator dispersal_;
  std::optional<Bytes> w_i_;
  RbaNode inner_;
};

}  // namespace acool
