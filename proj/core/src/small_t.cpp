#include "acool/small_t.hpp"

namespace acool {

SmallTNode::SmallTNode(std::size_t n, CodeParams committee_params, NodeId self, AcoolOptions opt)
    : n_(n),
      params_(committee_params),
      self_(self),
      oec_(committee_params),
      shmdm_seen_(committee_params.n),
      bottom_markers_(committee_params.n) {
  if (params_.n != committee_size(params_.t) || params_.n > n)
    throw Error(ErrorCode::InvalidParams, "committee must have 3t + 1 <= n members");
  if (self < params_.n) inner_ = std::make_unique<AcoolNode>(params_, self, opt);
}

void SmallTNode::input(const Bytes& w, Outbox& out) {
  if (!inner_) {
    note("outsider input ignored");
    return;
  }
  if (terminated()) return;
  inner_->input(w, out);
  after_inner(out);
}

void SmallTNode::handle(NodeId from, const ProtocolMsg& msg, Outbox& out) {
  if (terminated() || from >= params_.n) return;
  if (inner_) {
    if (std::holds_alternative<ShmdmMsg>(msg)) return;
    inner_->handle(from, msg, out);
    after_inner(out);
    return;
  }
  const auto* m = std::get_if<ShmdmMsg>(&msg);
  if (m == nullptr || !shmdm_seen_.insert(from)) return;
  if (!m->y) {
    bottom_markers_.insert(from);
    if (bottom_markers_.size() >= params_.t + 1) output_ = Decision{};
    return;
  }
  if (auto w = oec_.submit({from + 1, *m->y})) output_ = Decision{*w};
}

void SmallTNode::after_inner(Outbox& out) {
  if (output_ || !inner_->terminated()) return;
  output_ = inner_->output();
  std::vector<NodeId> outsiders;
  for (std::size_t j = params_.n; j < n_; ++j) outsiders.push_back(static_cast<NodeId>(j));
  if (outsiders.empty()) return;
  if (output_->value) {
    const auto shares = ecc_encode(params_, *output_->value);
    out.broadcast_to(outsiders, ShmdmMsg{shares[self_].elems});
  } else {
    out.broadcast_to(outsiders, ShmdmMsg{std::nullopt});
  }
}

std::optional<bool> SmallTNode::abba_input() const {
  return inner_ ? inner_->abba_input() : std::nullopt;
}

void SmallTNode::abba_deliver(bool b, Outbox& out) {
  if (!inner_ || terminated()) return;
  inner_->abba_deliver(b, out);
  after_inner(out);
}

std::vector<BuaSnapshot> SmallTNode::bua_snapshots() const {
  return inner_ ? inner_->bua_snapshots() : std::vector<BuaSnapshot>{};
}

std::size_t SmallTNode::decode_attempts() const {
  return oec_.decode_attempts() + (inner_ ? inner_->decode_attempts() : 0);
}

}  // namespace acool
