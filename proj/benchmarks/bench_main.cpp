#include <benchmark/benchmark.h>

#include "acool/bua.hpp"
#include "acool/codec.hpp"
#include "acool/sim.hpp"

using namespace acool;

static void BM_Encode(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const std::size_t t = (n - 1) / 3;
  const Bytes w(4096, 0x5a);
  const CodeParams p = params_for_payload(n, t, w.size());
  for (auto _ : st) benchmark::DoNotOptimize(ecc_encode(p, w));
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * w.size()));
}
BENCHMARK(BM_Encode)->Arg(4)->Arg(13)->Arg(49);

// t corrupted shares out of n, full Berlekamp-Welch decode
static void BM_DecodeWithErrors(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const std::size_t t = (n - 1) / 3;
  const Bytes w(1024, 0x17);
  const CodeParams p = params_for_payload(n, t, w.size());
  const auto sh = ecc_encode(p, w);
  std::map<std::size_t, Symbol> in;
  for (std::size_t j = 0; j < n; ++j) {
    Symbol s = sh[j].elems;
    if (j < t) s[0] = (s[0] + 1) % p.q;
    in[sh[j].index] = s;
  }
  for (auto _ : st) benchmark::DoNotOptimize(try_ecc_decode(p, in));
}
BENCHMARK(BM_DecodeWithErrors)->Arg(4)->Arg(13)->Arg(25);

static void BM_OecWorstOrder(benchmark::State& st) {
  const std::size_t n = 13, t = 4;
  const Bytes w(1024, 0x33);
  const CodeParams p = params_for_payload(n, t, w.size());
  auto sh = ecc_encode(p, w);
  for (std::size_t j = 0; j < t; ++j) sh[j].elems[0] = (sh[j].elems[0] + 1) % p.q;
  for (auto _ : st) {
    OecAccumulator oec(p);
    for (const auto& s : sh)
      if (oec.submit(s)) break;
    benchmark::DoNotOptimize(oec.decoded());
  }
}
BENCHMARK(BM_OecWorstOrder);

// one node's view of a fault-free first phase: input plus n symbols and n indicators
static void BM_BuaRound(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const std::size_t t = (n - 1) / 3;
  const Bytes w(1024, 0x42);
  const CodeParams p = params_for_payload(n, t, w.size());
  const auto sh = ecc_encode(p, w);
  for (auto _ : st) {
    Bua b({BuaInstance::Standalone, p, 0});
    Outbox out;
    BuaEvents ev;
    b.input(w, out, ev);
    for (std::size_t j = 0; j < n; ++j)
      b.on_symbol(static_cast<NodeId>(j), {BuaInstance::Standalone, sh[0].elems, sh[j].elems}, out, ev);
    for (std::size_t j = 0; j < n; ++j) b.on_indicator(static_cast<NodeId>(j), 1, true, out, ev);
    benchmark::DoNotOptimize(b.s1());
  }
}
BENCHMARK(BM_BuaRound)->Arg(4)->Arg(13)->Arg(49);

static void BM_FullRun(benchmark::State& st) {
  SimConfig c;
  c.n = static_cast<std::size_t>(st.range(0));
  c.t = (c.n - 1) / 3;
  c.msg_len_bits = 4096;
  std::uint64_t seed = 1;
  for (auto _ : st) {
    c.seed = seed++;
    benchmark::DoNotOptimize(run(c).metrics.bits_total);
  }
}
BENCHMARK(BM_FullRun)->Arg(4)->Arg(13)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
