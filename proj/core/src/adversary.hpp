#pragma once

#include <random>
#include <vector>

#include "acool/sim.hpp"

namespace acool::detail {

/// Rewrites the outbound traffic of Byzantine nodes. Each Byzantine node runs
/// one honest shadow (two for split_input_builder); the strategy sees only the
/// shadows' outboxes.
class Adversary {
 public:
  Adversary(AdversaryKind kind, CodeParams params, std::size_t n, std::vector<bool> byzantine,
            std::vector<bool> victim, std::uint64_t seed);

  AdversaryKind kind() const { return kind_; }
  std::size_t shadows() const { return kind_ == AdversaryKind::SplitInputBuilder ? 2 : 1; }
  bool is_victim(NodeId j) const { return j < victim_.size() && victim_[j]; }

  /// Messages a Byzantine node sends before anything else happens.
  std::vector<Envelope> opening(NodeId b);
  std::vector<Envelope> transform(NodeId b, std::size_t shadow, std::vector<Envelope> env);

 private:
  Symbol garbage();
  MsgPtr garbled(const ProtocolMsg& msg);
  MsgPtr perturbed(const ProtocolMsg& msg);
  MsgPtr flipped(const ProtocolMsg& msg);
  ProtocolMsg random_message();

  AdversaryKind kind_;
  CodeParams params_;
  std::size_t n_;
  std::vector<bool> byz_;
  std::vector<bool> victim_;
  std::vector<bool> group_b_;
  std::mt19937_64 rng_;
};

}  // namespace acool::detail
