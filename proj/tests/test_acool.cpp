#include <gtest/gtest.h>

#include "acool/acool.hpp"
#include "local_net.hpp"

using namespace acool;
using acool::testing::LocalNet;

namespace {

AcoolOptions coin_opts(std::uint64_t seed) {
  AcoolOptions o;
  o.abba = AbbaKind::Coin;
  o.coin_seed = seed;
  return o;
}

LocalNet make_net(const CodeParams& p, std::uint64_t seed) {
  LocalNet net;
  net.rng.seed(seed);
  for (std::size_t i = 0; i < p.n; ++i)
    net.nodes.push_back(std::make_unique<AcoolNode>(p, static_cast<NodeId>(i), coin_opts(seed)));
  return net;
}

const AcoolNode& node(const LocalNet& net, std::size_t i) { return static_cast<const AcoolNode&>(*net.nodes[i]); }

const Bytes kW1{'a', 'l', 'p', 'h', 'a', '-', '1', '!'};
const Bytes kW2{'b', 'r', 'a', 'v', 'o', '-', '2', '?'};

}  // namespace

TEST(Acool, FaultFreeAllOutputInput) {
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  for (std::uint64_t s = 1; s <= 30; ++s) {
    LocalNet net = make_net(p, s);
    for (NodeId i = 0; i < 4; ++i) net.input(i, kW1);
    net.run();
    for (std::size_t i = 0; i < 4; ++i) {
      ASSERT_TRUE(node(net, i).output()) << "seed " << s;
      EXPECT_EQ(node(net, i).output()->value, kW1);
      EXPECT_EQ(node(net, i).w_tilde(), kW1);
      EXPECT_EQ(node(net, i).abba().input_bit(), true);
    }
  }
}

TEST(Acool, SingleInputSendsOnlyFirstInstanceSymbols) {
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  AcoolNode a(p, 0);
  Outbox out;
  a.input(kW1, out);
  const auto env = out.take();
  ASSERT_EQ(env.size(), 4u);
  for (const auto& e : env) {
    const auto* s = std::get_if<SymbolMsg>(e.msg.get());
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->instance, BuaInstance::First);
  }
}

TEST(Acool, SecondInputIgnored) {
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  AcoolNode a(p, 0);
  Outbox out;
  a.input(kW1, out);
  out.take();
  a.input(kW2, out);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(a.bua1().w(), kW1);
}

TEST(Acool, SplitInputWithSilentFaultRecoversMajorityValue) {
  // A1 = {0, 1} hold w1, A2 = {2} holds w2, node 3 is silent
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  for (std::uint64_t s = 1; s <= 20; ++s) {
    LocalNet net = make_net(p, s);
    net.crashed = {3};
    net.input(0, kW1);
    net.input(1, kW1);
    net.input(2, kW2);
    net.run();
    for (std::size_t i : {0u, 1u}) {
      EXPECT_FALSE(node(net, i).bua1().s1()) << "seed " << s;
      EXPECT_TRUE(node(net, i).y_major());
    }
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(node(net, i).w_tilde(), kW1) << "seed " << s;
      ASSERT_TRUE(node(net, i).output());
      EXPECT_EQ(node(net, i).output()->value, kW1);
    }
  }
}

TEST(Acool, AllDistinctInputsGiveBottom) {
  const CodeParams p = params_for_payload(4, 1, 1);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    LocalNet net = make_net(p, s);
    for (NodeId i = 0; i < 4; ++i) net.input(i, Bytes{static_cast<std::uint8_t>(i + 1)});
    net.run();
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(node(net, i).abba().input_bit(), false);
      ASSERT_TRUE(node(net, i).output());
      EXPECT_TRUE(node(net, i).output()->is_bottom());
    }
  }
}

TEST(Acool, NewSymbolAfterDecodeIsIgnored) {
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  LocalNet net = make_net(p, 3);
  for (NodeId i = 0; i < 4; ++i) net.input(i, kW1);
  // stop before termination: deliver until w_tilde is set at node 0
  while (!node(net, 0).w_tilde() && net.step()) {
  }
  ASSERT_TRUE(node(net, 0).w_tilde());
  const std::size_t attempts = node(net, 0).oec_new().decode_attempts();
  Outbox out;
  net.nodes[0]->handle(2, NewSymbolMsg{ecc_encode(p, kW2)[2].elems}, out);
  EXPECT_EQ(node(net, 0).oec_new().decode_attempts(), attempts);
}

TEST(Acool, LegacyWiringHasNoSecondInstance) {
  const CodeParams p = params_for_payload(4, 1, kW1.size());
  AcoolOptions o = coin_opts(2);
  o.legacy_cool = true;
  LocalNet net;
  net.rng.seed(2);
  for (NodeId i = 0; i < 4; ++i) net.nodes.push_back(std::make_unique<AcoolNode>(p, i, o));
  for (NodeId i = 0; i < 4; ++i) net.input(i, kW1);
  net.run();
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_FALSE(node(net, i).bua2().has_input());
    ASSERT_TRUE(node(net, i).output());
    EXPECT_EQ(node(net, i).output()->value, kW1);
  }
}

// ---- READY amplification and dissemination ----

TEST(ReadyHmdm, TwoTPlusOneOnesEnterPh3) {
  const CodeParams p = params_for_payload(4, 1, 8);
  ReadyHmdm h(p, 0);
  Bua b({BuaInstance::Second, p, 0});
  Outbox out;
  for (NodeId j = 1; j <= 3; ++j) h.on_ready(j, true, out);
  EXPECT_EQ(h.v_out(), true);
  h.advance(b, out);
  EXPECT_TRUE(h.ph3());
  EXPECT_FALSE(h.terminated());
}

TEST(ReadyHmdm, TPlusOneAmplifies) {
  const CodeParams p = params_for_payload(4, 1, 8);
  ReadyHmdm h(p, 0);
  Outbox out;
  h.on_ready(1, false, out);
  EXPECT_TRUE(out.empty());
  h.on_ready(2, false, out);
  const auto env = out.take();
  ASSERT_EQ(env.size(), 4u);
  EXPECT_EQ(std::get<ReadyMsg>(*env[0].msg).bit, false);
  EXPECT_EQ(h.ready_bit(), false);
}

TEST(ReadyHmdm, ReadyIsSentOnce) {
  const CodeParams p = params_for_payload(4, 1, 8);
  ReadyHmdm h(p, 0);
  Outbox out;
  h.send_ready(true, out);
  out.take();
  h.on_ready(1, false, out);
  h.on_ready(2, false, out);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(h.ready_bit(), true);
}

TEST(ReadyHmdm, ZeroDecisionOutputsBottom) {
  const CodeParams p = params_for_payload(4, 1, 8);
  ReadyHmdm h(p, 0);
  Bua b({BuaInstance::Second, p, 0});
  Outbox out;
  for (NodeId j = 1; j <= 3; ++j) h.on_ready(j, false, out);
  h.advance(b, out);
  ASSERT_TRUE(h.output());
  EXPECT_TRUE(h.output()->is_bottom());
}

TEST(ReadyHmdm, SuccessfulNodeOutputsItsValue) {
  const CodeParams p = params_for_payload(4, 1, 8);
  const Bytes w(8, 5);
  const auto sh = ecc_encode(p, w);
  Bua b({BuaInstance::Second, p, 0});
  ReadyHmdm h(p, 0);
  Outbox out;
  BuaEvents ev;
  b.input(w, out, ev);
  for (NodeId j = 0; j < 3; ++j) b.on_symbol(j, {BuaInstance::Second, sh[0].elems, sh[j].elems}, out, ev);
  for (NodeId j = 0; j < 3; ++j) b.on_indicator(j, 1, true, out, ev);
  ASSERT_EQ(b.s2(), true);
  h.set_vout(true);
  h.advance(b, out);
  ASSERT_TRUE(h.output());
  EXPECT_EQ(h.output()->value, w);
}

TEST(ReadyHmdm, CalibratesFromPhaseTwoOnesAndDecodes) {
  const CodeParams p = params_for_payload(4, 1, 8);
  const Bytes w(8, 6);
  const auto sh = ecc_encode(p, w);
  Bua b({BuaInstance::Second, p, 0});  // never gets an input
  ReadyHmdm h(p, 0);
  Outbox out;
  BuaEvents ev;
  auto feed = [&](NodeId j) {
    ev.clear();
    b.on_symbol(j, {BuaInstance::Second, sh[0].elems, sh[j].elems}, out, ev);
    b.on_indicator(j, 2, true, out, ev);
    for (const auto& e : ev) h.on_bua_event(b, e);
  };
  h.set_vout(true);
  feed(1);
  h.advance(b, out);
  EXPECT_FALSE(h.calibrated());
  feed(2);
  h.advance(b, out);
  ASSERT_TRUE(h.calibrated());
  EXPECT_EQ(*h.calibrated(), sh[0].elems);
  bool sent = false;
  for (const auto& e : out.take())
    if (const auto* c = std::get_if<CorrectSymbolMsg>(e.msg.get())) sent = c->y == sh[0].elems;
  EXPECT_TRUE(sent);
  // harvested y_1, y_2 already meet k + t = 2
  ASSERT_TRUE(h.output());
  EXPECT_EQ(h.output()->value, w);
}

TEST(ReadyHmdm, CorrectSymbolsBeforePh3AreKept) {
  const CodeParams p = params_for_payload(4, 1, 8);
  const Bytes w(8, 7);
  const auto sh = ecc_encode(p, w);
  ReadyHmdm h(p, 0);
  h.on_correct_symbol(1, sh[1].elems);
  h.on_correct_symbol(2, sh[2].elems);
  EXPECT_TRUE(h.oec().done());
  const std::size_t attempts = h.oec().decode_attempts();
  h.on_correct_symbol(3, sh[3].elems);
  EXPECT_EQ(h.oec().decode_attempts(), attempts);
}

TEST(ReadyHmdm, OecToleratesGarbageCorrectSymbols) {
  const CodeParams p = params_for_payload(7, 2, 8);
  const Bytes w(8, 8);
  const auto sh = ecc_encode(p, w);
  ReadyHmdm h(p, 0);
  Symbol junk(p.chunks, 1);
  h.on_correct_symbol(5, junk);
  h.on_correct_symbol(6, junk);
  for (NodeId j = 0; j < 5 && !h.oec().done(); ++j) h.on_correct_symbol(j, sh[j].elems);
  ASSERT_TRUE(h.oec().done());
  EXPECT_EQ(*h.oec().decoded(), w);
  EXPECT_LE(h.oec().decode_attempts(), p.t + 1);
}
