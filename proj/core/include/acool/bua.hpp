#pragma once

#include <optional>
#include <vector>

#include "acool/codec.hpp"
#include "acool/messages.hpp"
#include "acool/types.hpp"

namespace acool {

struct BuaConfig {
  BuaInstance instance = BuaInstance::Standalone;
  CodeParams params;
  NodeId self = 0;
};

/// Something the unique-agreement instance hands to the protocol above it.
struct BuaEvent {
  enum class Kind : std::uint8_t {
    SymbolDelivered,  // from: sender j; pair available via Bua::delivered(j)
    S1Set,            // bit: s^[1]
    S2Set,            // bit: s^[2]
    SetsUpdated,      // from joined S_bit^[phase]
    Final,            // bit: vote
  };
  Kind kind;
  NodeId from = 0;
  std::uint8_t phase = 0;
  bool bit = false;
};

using BuaEvents = std::vector<BuaEvent>;

/// Symbol pair (y_i^(j), y_j^(j)) received from node j.
struct DeliveredPair {
  Symbol for_me;
  Symbol own;
};

/// One unique-agreement instance (two phases of symbol exchange and
/// success-indicator gossip) for a single node.
class Bua {
 public:
  explicit Bua(BuaConfig cfg);

  /// False (and no effect) when `w` is empty or an input was already given.
  bool input(const Bytes& w, Outbox& out, BuaEvents& ev);
  void on_symbol(NodeId from, const SymbolMsg& msg, Outbox& out, BuaEvents& ev);
  void on_indicator(NodeId from, std::uint8_t phase, bool bit, Outbox& out, BuaEvents& ev);

  const BuaConfig& config() const { return cfg_; }
  std::size_t n() const { return cfg_.params.n; }
  std::size_t t() const { return cfg_.params.t; }

  bool has_input() const { return w_.has_value(); }
  const std::optional<Bytes>& w() const { return w_; }
  const std::optional<bool>& s1() const { return s1_; }
  const std::optional<bool>& s2() const { return s2_; }
  const std::optional<bool>& vote() const { return vote_; }
  bool vote_collision() const { return vote_collision_; }

  const NodeSet& L0() const { return l0_; }
  const NodeSet& L1() const { return l1_; }
  const NodeSet& S(std::uint8_t phase, bool bit) const;

  /// Pair delivered from j, or null. Delivery does not wait for the local input.
  const DeliveredPair* delivered(NodeId j) const;
  /// y_i^(i) once encoded.
  const Symbol* own_symbol() const;
  std::size_t pending() const { return pending_.size(); }

 private:
  void classify(NodeId from, const SymbolMsg& msg);
  void evaluate(Outbox& out, BuaEvents& ev);
  void broadcast_indicator(std::uint8_t phase, bool bit, Outbox& out);

  BuaConfig cfg_;
  std::optional<Bytes> w_;
  std::vector<SymbolShare> shares_;
  bool enc_done_ = false;
  NodeSet l0_, l1_;
  NodeSet s1p1_, s0p1_, s1p2_, s0p2_;
  std::optional<bool> s1_, s2_, vote_;
  bool vote_collision_ = false;
  NodeSet seen_symbol_, seen_si1_, seen_si2_;
  std::vector<std::pair<NodeId, SymbolMsg>> pending_;
  std::vector<std::optional<DeliveredPair>> delivered_;
};

}  // namespace acool
