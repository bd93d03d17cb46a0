#pragma once

#include <map>
#include <memory>
#include <optional>

#include "acool/abba.hpp"
#include "acool/bua.hpp"
#include "acool/hmdm.hpp"
#include "acool/node.hpp"

namespace acool {

struct AcoolOptions {
  /// ABBA output sets v_out directly instead of going through READY.
  bool skip_brba = false;
  /// Original wiring: first BUA's vote feeds ABBA, dissemination runs on the
  /// first BUA, no second BUA and no NEWSYMBOL path.
  bool legacy_cool = false;
  AbbaKind abba = AbbaKind::Oracle;
  std::uint64_t coin_seed = 0;
};

/// Error-free asynchronous multi-valued Byzantine agreement for one node.
/// `params.n` is the number of participants (ids 0..n-1).
class AcoolNode final : public ProtocolNode {
 public:
  AcoolNode(CodeParams params, NodeId self, AcoolOptions opt = {});

  void input(const Bytes& w, Outbox& out) override;
  void handle(NodeId from, const ProtocolMsg& msg, Outbox& out) override;
  const std::optional<Decision>& output() const override { return core_.output(); }
  bool terminated() const override { return core_.terminated(); }

  bool abba_participant() const override { return abba_->adjudicated(); }
  std::optional<bool> abba_input() const override { return abba_->input_bit(); }
  void abba_deliver(bool b, Outbox& out) override;
  std::size_t abba_instances() const override { return 1; }

  std::vector<BuaSnapshot> bua_snapshots() const override;
  std::size_t decode_attempts() const override;

  const Bua& bua1() const { return bua1_; }
  const Bua& bua2() const { return bua2_; }
  const ReadyHmdm& core() const { return core_; }
  const Abba& abba() const { return *abba_; }
  const std::optional<Bytes>& w_tilde() const { return w_tilde_; }
  const std::optional<Symbol>& y_major() const { return y_major_; }
  const OecAccumulator& oec_new() const { return oec_new_; }

 private:
  void on_bua1(const BuaEvents& ev, Outbox& out);
  void on_bua2(const BuaEvents& ev, Outbox& out);
  void feed_new(NodeId j, const Symbol& y, Outbox& out);
  void check_y_majority(Outbox& out);
  void set_w_tilde(const Bytes& w, Outbox& out);
  void give_abba(bool b, Outbox& out);
  void after_abba(Outbox& out);
  void settle(Outbox& out);

  CodeParams params_;
  NodeId self_;
  AcoolOptions opt_;
  Bua bua1_, bua2_;
  std::optional<Bytes> w_input_;
  std::optional<Bytes> w_tilde_;
  OecAccumulator oec_new_;
  NodeSet new_seen_;
  std::map<Symbol, NodeSet> y_table_;
  std::optional<Symbol> y_major_;
  std::unique_ptr<Abba> abba_;
  bool abba_out_handled_ = false;
  ReadyHmdm core_;
  std::optional<bool> s2_at_final_[2];
};

}  // namespace acool
