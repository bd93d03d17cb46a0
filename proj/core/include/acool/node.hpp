#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acool/messages.hpp"
#include "acool/types.hpp"

namespace acool {

/// A node's final value; `value == nullopt` is the default (bottom) output.
struct Decision {
  std::optional<Bytes> value;

  bool is_bottom() const { return !value.has_value(); }
  friend bool operator==(const Decision&, const Decision&) = default;
};

/// End-of-run view of one unique-agreement instance, for post-hoc checks.
struct BuaSnapshot {
  BuaInstance instance = BuaInstance::Standalone;
  std::optional<Bytes> input;
  std::optional<bool> s1, s2, vote;
  std::optional<bool> s2_at_final;
  bool vote_collision = false;
};

/// Message-driven protocol state machine for one node.
class ProtocolNode {
 public:
  virtual ~ProtocolNode() = default;

  virtual void input(const Bytes& w, Outbox& out) = 0;
  virtual void handle(NodeId from, const ProtocolMsg& msg, Outbox& out) = 0;
  virtual const std::optional<Decision>& output() const = 0;
  virtual bool terminated() const = 0;

  /// Takes part in the harness-adjudicated binary agreement.
  virtual bool abba_participant() const { return false; }
  virtual std::optional<bool> abba_input() const { return std::nullopt; }
  virtual void abba_deliver(bool, Outbox&) {}
  virtual std::size_t abba_instances() const { return 0; }

  virtual std::vector<BuaSnapshot> bua_snapshots() const { return {}; }
  virtual std::size_t decode_attempts() const { return 0; }
  /// Races and collisions observed (free-form, for run logs).
  const std::vector<std::string>& notes() const { return notes_; }

 protected:
  void note(std::string s) { notes_.push_back(std::move(s)); }

 private:
  std::vector<std::string> notes_;
};

}  // namespace acool
