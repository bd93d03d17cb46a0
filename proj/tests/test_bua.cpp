#include <gtest/gtest.h>

#include <algorithm>

#include "acool/bua.hpp"

using namespace acool;

namespace {

struct Fixture {
  CodeParams p = params_for_payload(4, 1, 8);
  Bytes m = Bytes{1, 2, 3, 4, 5, 6, 7, 8};
  Bytes other = Bytes{9, 9, 9, 9, 9, 9, 9, 9};

  // what node j (holding w) sends to node i
  SymbolMsg symbol(const Bytes& w, NodeId j, NodeId i) const {
    const auto sh = ecc_encode(p, w);
    return SymbolMsg{BuaInstance::Standalone, sh[i].elems, sh[j].elems};
  }
};

std::size_t count_indicators(const std::vector<Envelope>& env, std::uint8_t phase, bool bit) {
  std::size_t c = 0;
  for (const auto& e : env)
    if (const auto* m = std::get_if<IndicatorMsg>(e.msg.get()); m && m->phase == phase && m->bit == bit) ++c;
  return c;
}

bool has(const BuaEvents& ev, BuaEvent::Kind k) {
  return std::any_of(ev.begin(), ev.end(), [&](const BuaEvent& e) { return e.kind == k; });
}

}  // namespace

TEST(Bua, InputSendsOneSymbolPerNode) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 2});
  Outbox out;
  BuaEvents ev;
  ASSERT_TRUE(b.input(f.m, out, ev));
  const auto env = out.take();
  ASSERT_EQ(env.size(), 4u);
  const auto sh = ecc_encode(f.p, f.m);
  for (NodeId j = 0; j < 4; ++j) {
    EXPECT_EQ(env[j].to, j);
    const auto& s = std::get<SymbolMsg>(*env[j].msg);
    EXPECT_EQ(s.for_receiver, sh[j].elems);
    EXPECT_EQ(s.own, sh[2].elems);
  }
}

TEST(Bua, EmptyInputRejected) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  EXPECT_FALSE(b.input({}, out, ev));
  EXPECT_TRUE(out.empty());
  EXPECT_FALSE(b.has_input());
}

TEST(Bua, SecondInputIgnored) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  ASSERT_TRUE(b.input(f.m, out, ev));
  out.take();
  EXPECT_FALSE(b.input(f.other, out, ev));
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(*b.w(), f.m);
}

TEST(Bua, S1OneExactlyAtQuorum) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.input(f.m, out, ev);
  out.take();
  for (NodeId j = 0; j < 3; ++j) {
    ev.clear();
    b.on_symbol(j, f.symbol(f.m, j, 0), out, ev);
    if (j < 2) {
      EXPECT_FALSE(b.s1());
    } else {
      ASSERT_TRUE(b.s1());
      EXPECT_TRUE(*b.s1());
      EXPECT_TRUE(has(ev, BuaEvent::Kind::S1Set));
    }
  }
  EXPECT_EQ(count_indicators(out.take(), 1, true), 4u);
}

TEST(Bua, S1ZeroOnTPlusOneMismatches) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.input(f.m, out, ev);
  out.take();
  b.on_symbol(1, f.symbol(f.other, 1, 0), out, ev);
  EXPECT_FALSE(b.s1());
  b.on_symbol(2, f.symbol(f.other, 2, 0), out, ev);
  ASSERT_TRUE(b.s1());
  EXPECT_FALSE(*b.s1());
  // s1 = 0 forces s2 = 0
  ASSERT_TRUE(b.s2());
  EXPECT_FALSE(*b.s2());
  const auto env = out.take();
  EXPECT_EQ(count_indicators(env, 1, false), 4u);
  EXPECT_EQ(count_indicators(env, 2, false), 4u);
}

TEST(Bua, EarlySymbolsMatchInOrderOutcome) {
  Fixture f;
  // senders 0,1 hold m, sender 2,3 hold other: mixed L-sets
  std::vector<std::pair<NodeId, SymbolMsg>> msgs;
  for (NodeId j = 0; j < 4; ++j) msgs.emplace_back(j, f.symbol(j < 2 ? f.m : f.other, j, 1));

  auto reference = [&] {
    Bua b({BuaInstance::Standalone, f.p, 1});
    Outbox out;
    BuaEvents ev;
    b.input(f.m, out, ev);
    for (auto& [j, s] : msgs) b.on_symbol(j, s, out, ev);
    return std::make_pair(b.L0().members(), b.L1().members());
  }();

  std::vector<int> order{0, 1, 2, 3, 4};  // 4 marks the input
  do {
    Bua b({BuaInstance::Standalone, f.p, 1});
    Outbox out;
    BuaEvents ev;
    for (int k : order) {
      if (k == 4)
        b.input(f.m, out, ev);
      else
        b.on_symbol(msgs[k].first, msgs[k].second, out, ev);
    }
    EXPECT_EQ(b.pending(), 0u);
    EXPECT_EQ(b.L0().members(), reference.first);
    EXPECT_EQ(b.L1().members(), reference.second);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Bua, EarlySymbolIsDeliveredButNotClassified) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.on_symbol(3, f.symbol(f.m, 3, 0), out, ev);
  EXPECT_TRUE(has(ev, BuaEvent::Kind::SymbolDelivered));
  ASSERT_NE(b.delivered(3), nullptr);
  EXPECT_EQ(b.L1().size() + b.L0().size(), 0u);
  EXPECT_EQ(b.pending(), 1u);
}

TEST(Bua, MalformedSymbolGoesToL0Undelivered) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.input(f.m, out, ev);
  ev.clear();
  SymbolMsg bad{BuaInstance::Standalone, Symbol{999999}, Symbol{}};
  b.on_symbol(2, bad, out, ev);
  EXPECT_TRUE(b.L0().contains(2));
  EXPECT_EQ(b.delivered(2), nullptr);
  EXPECT_FALSE(has(ev, BuaEvent::Kind::SymbolDelivered));
}

TEST(Bua, VoteOneOnQuorumOfPhaseTwoOnes) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  for (NodeId j = 1; j <= 3; ++j) b.on_indicator(j, 2, true, out, ev);
  ASSERT_TRUE(b.vote());
  EXPECT_TRUE(*b.vote());
  EXPECT_TRUE(has(ev, BuaEvent::Kind::Final));
}

TEST(Bua, VoteZeroOnTPlusOnePhaseTwoZeros) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.on_indicator(1, 2, false, out, ev);
  EXPECT_FALSE(b.vote());
  b.on_indicator(2, 2, false, out, ev);
  ASSERT_TRUE(b.vote());
  EXPECT_FALSE(*b.vote());
}

TEST(Bua, VoteIsWriteOnce) {
  const CodeParams p = params_for_payload(7, 2, 8);
  Bua b({BuaInstance::Standalone, p, 0});
  Outbox out;
  BuaEvents ev;
  for (NodeId j = 0; j < 3; ++j) b.on_indicator(j, 2, false, out, ev);
  ASSERT_FALSE(*b.vote());
  for (NodeId j = 3; j < 7; ++j) b.on_indicator(j, 2, true, out, ev);
  EXPECT_FALSE(*b.vote());
  EXPECT_FALSE(b.vote_collision());
}

TEST(Bua, RepeatIndicatorFromSameSenderIgnored) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.on_indicator(1, 1, false, out, ev);
  b.on_indicator(1, 1, true, out, ev);
  EXPECT_TRUE(b.S(1, false).contains(1));
  EXPECT_FALSE(b.S(1, true).contains(1));
  EXPECT_EQ(b.S(1, true).size() + b.S(1, false).size(), 1u);
}

TEST(Bua, PhaseTwoOneNeedsS1AndQuorumOverlap) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.input(f.m, out, ev);
  for (NodeId j = 0; j < 3; ++j) b.on_symbol(j, f.symbol(f.m, j, 0), out, ev);
  ASSERT_TRUE(*b.s1());
  EXPECT_FALSE(b.s2());
  b.on_indicator(0, 1, true, out, ev);
  b.on_indicator(1, 1, true, out, ev);
  EXPECT_FALSE(b.s2());
  b.on_indicator(2, 1, true, out, ev);
  ASSERT_TRUE(b.s2());
  EXPECT_TRUE(*b.s2());
}

TEST(Bua, PhaseTwoZeroFromPhaseOneZeros) {
  Fixture f;
  Bua b({BuaInstance::Standalone, f.p, 0});
  Outbox out;
  BuaEvents ev;
  b.on_indicator(1, 1, false, out, ev);
  b.on_indicator(2, 1, false, out, ev);
  ASSERT_TRUE(b.s2());
  EXPECT_FALSE(*b.s2());
}
