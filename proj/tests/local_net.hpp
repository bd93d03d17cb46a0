#pragma once

#include <functional>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "acool/node.hpp"

namespace acool::testing {

// Seeded random-order delivery among ProtocolNodes; crashed ids never send.
struct LocalNet {
  std::vector<std::unique_ptr<ProtocolNode>> nodes;
  std::set<NodeId> crashed;
  std::mt19937_64 rng{1};
  std::vector<std::pair<NodeId, Envelope>> queue;
  std::size_t delivered = 0;
  // optional rewrite of every message sent by a given node
  std::function<bool(NodeId from, Envelope&)> filter;

  void flush(NodeId from, Outbox& out) {
    for (auto& e : out.take()) {
      if (crashed.count(from)) continue;
      if (filter && !filter(from, e)) continue;
      queue.emplace_back(from, std::move(e));
    }
  }

  void input(NodeId i, const Bytes& w) {
    Outbox out;
    nodes[i]->input(w, out);
    flush(i, out);
  }

  bool step() {
    if (queue.empty()) return false;
    const std::size_t k = rng() % queue.size();
    auto [from, env] = std::move(queue[k]);
    queue[k] = std::move(queue.back());
    queue.pop_back();
    if (env.to >= nodes.size() || crashed.count(env.to) || nodes[env.to]->terminated()) return true;
    Outbox out;
    nodes[env.to]->handle(from, *env.msg, out);
    flush(env.to, out);
    ++delivered;
    return true;
  }

  void run(std::size_t cap = 1'000'000) {
    while (cap-- && step()) {
    }
  }
};

}  // namespace acool::testing
