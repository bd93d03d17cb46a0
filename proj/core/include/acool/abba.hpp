#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "acool/messages.hpp"
#include "acool/types.hpp"

namespace acool {

enum class AbbaKind : std::uint8_t { Oracle, Coin };

/// Binary agreement endpoint owned by one node.
class Abba {
 public:
  virtual ~Abba() = default;

  /// False if an input was already given.
  virtual bool input(bool b, Outbox& out) = 0;
  virtual void handle(NodeId from, const AbbaMsg& msg, Outbox& out) = 0;
  /// Adjudicated decision pushed by the harness (oracle only).
  virtual void deliver(bool b) = 0;
  virtual bool adjudicated() const = 0;

  const std::optional<bool>& input_bit() const { return input_; }
  const std::optional<bool>& output() const { return output_; }

 protected:
  std::optional<bool> input_;
  std::optional<bool> output_;
};

/// Zero-message endpoint: records the input; the harness decides.
class OracleAbba final : public Abba {
 public:
  bool input(bool b, Outbox&) override;
  void handle(NodeId, const AbbaMsg&, Outbox&) override {}
  void deliver(bool b) override;
  bool adjudicated() const override { return true; }
};

/// Harness rule: the hint if some honest node proposed it, else the honest
/// unanimous bit. `inputs` must be non-empty.
bool oracle_abba_decide(const std::map<NodeId, bool>& inputs, bool adversary_hint);

/// Common coin shared by all nodes of a run.
class CoinOracle {
 public:
  explicit CoinOracle(std::uint64_t seed) : seed_(seed) {}
  bool coin(std::uint64_t instance, std::uint32_t round) const;

 private:
  std::uint64_t seed_;
};

/// Round-based binary agreement over a perfect common coin: BV-broadcast of
/// estimates, one AUX per round, n - t quorums.
class CoinAbba final : public Abba {
 public:
  CoinAbba(std::size_t n, std::size_t t, CoinOracle coin, std::uint64_t instance = 0);

  bool input(bool b, Outbox& out) override;
  void handle(NodeId from, const AbbaMsg& msg, Outbox& out) override;
  void deliver(bool) override {}
  bool adjudicated() const override { return false; }

  std::uint32_t round() const { return round_; }
  std::optional<std::uint32_t> decided_round() const { return decided_round_; }
  bool halted() const { return halted_; }

 private:
  struct Round {
    bool est_sent[2] = {false, false};
    NodeSet est_from[2];
    bool bin[2] = {false, false};
    std::optional<bool> aux_sent;
    NodeSet aux_seen;
    NodeSet aux_from[2];
  };

  Round& at(std::uint32_t r);
  void send_est(std::uint32_t r, bool b, Outbox& out);
  void progress(Outbox& out);

  std::size_t n_, t_;
  CoinOracle coin_;
  std::uint64_t instance_;
  std::map<std::uint32_t, Round> rounds_;
  std::uint32_t round_ = 0;  // 0 until input
  bool est_ = false;
  std::optional<std::uint32_t> decided_round_;
  std::uint32_t halt_round_ = 0;
  bool halted_ = false;
};

std::unique_ptr<Abba> make_abba(AbbaKind kind, std::size_t n, std::size_t t, std::uint64_t coin_seed);

}  // namespace acool
