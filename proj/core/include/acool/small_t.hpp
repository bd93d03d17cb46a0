#pragma once

#include <memory>
#include <optional>

#include "acool/acool.hpp"

namespace acool {

/// Committee size used for a fault bound t.
inline std::size_t committee_size(std::size_t t) { return 3 * t + 1; }

/// Whether the committee variant is preferred: n >= ratio * (3t + 1).
inline bool prefer_small_t(std::size_t n, std::size_t t, std::size_t ratio = 2) {
  return n >= ratio * committee_size(t);
}

/// Agreement for t much smaller than n: the lowest 3t + 1 ids run AcoolNode
/// among themselves and then disperse coded shares of the decision to the
/// remaining nodes. A bottom decision is dispersed as a one-bit marker;
/// outsiders output bottom on t + 1 markers.
class SmallTNode final : public ProtocolNode {
 public:
  /// `committee_params` is the code over the committee (n = 3t + 1).
  SmallTNode(std::size_t n, CodeParams committee_params, NodeId self, AcoolOptions opt = {});

  void input(const Bytes& w, Outbox& out) override;
  void handle(NodeId from, const ProtocolMsg& msg, Outbox& out) override;
  const std::optional<Decision>& output() const override { return output_; }
  bool terminated() const override { return output_.has_value(); }

  bool abba_participant() const override { return inner_ && inner_->abba_participant(); }
  std::optional<bool> abba_input() const override;
  void abba_deliver(bool b, Outbox& out) override;
  std::size_t abba_instances() const override { return inner_ ? inner_->abba_instances() : 0; }

  std::vector<BuaSnapshot> bua_snapshots() const override;
  std::size_t decode_attempts() const override;

  bool in_committee() const { return inner_ != nullptr; }
  std::size_t committee() const { return params_.n; }

 private:
  void after_inner(Outbox& out);

  std::size_t n_;
  CodeParams params_;
  NodeId self_;
  std::unique_ptr<AcoolNode> inner_;
  OecAccumulator oec_;
  NodeSet shmdm_seen_;
  NodeSet bottom_markers_;
  std::optional<Decision> output_;
};

}  // namespace acool
