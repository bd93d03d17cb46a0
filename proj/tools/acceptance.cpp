#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "acool/codec.hpp"
#include "acool/sim.hpp"
#include "acool/sweep.hpp"

namespace acool {

namespace {

using Clock = std::chrono::steady_clock;

struct GridTally {
  std::size_t runs = 0;
  std::size_t consistency_fail = 0;
  std::size_t validity_fail = 0;
  std::size_t bottom_outputs = 0;
  std::size_t liveness_fail = 0;
  std::size_t unique_fail = 0;
  std::size_t s1_fail = 0;
  std::size_t s2_fail = 0;
  std::size_t abba_fail = 0;
  std::vector<std::string> first_failures;

  void remember(const SimConfig& c, const char* what) {
    if (first_failures.size() >= 3) return;
    std::ostringstream os;
    os << what << " n=" << c.n << " adv=" << to_string(c.adversary) << " sched=" << to_string(c.scheduler)
       << " seed=" << c.seed;
    first_failures.push_back(os.str());
  }
};

Bytes value_for(std::uint64_t seed, std::size_t tag, std::size_t bytes) {
  std::mt19937_64 g(seed * 1315423911ULL + tag);
  Bytes b(bytes);
  for (auto& x : b) x = static_cast<std::uint8_t>(g());
  return b;
}

std::vector<std::optional<Bytes>> mixed_inputs(std::size_t n, std::uint64_t seed, std::size_t bytes) {
  std::mt19937_64 g(seed ^ 0xabcdefULL);
  std::vector<std::optional<Bytes>> in(n);
  const bool distinct = seed % 3 == 0;
  for (std::size_t i = 0; i < n; ++i) in[i] = value_for(seed, distinct ? i : (g() & 1), bytes);
  return in;
}

const std::vector<std::pair<std::size_t, std::size_t>> kGrid{{4, 1}, {7, 2}, {10, 3}};

void tally(GridTally& g, const RunReport& r, bool equal_inputs) {
  const SimConfig& c = r.config;
  ++g.runs;
  if (!r.props.consistency) ++g.consistency_fail, g.remember(c, "consistency");
  if (r.liveness_failure()) ++g.liveness_fail, g.remember(c, "liveness");
  if (!r.props.unique_agreement) ++g.unique_fail, g.remember(c, "unique");
  if (!r.props.at_most_two_s1) ++g.s1_fail, g.remember(c, "s1");
  if (!r.props.single_s2_value) ++g.s2_fail, g.remember(c, "s2");
  if (!r.props.single_abba) ++g.abba_fail, g.remember(c, "abba");
  if (equal_inputs) {
    bool ok = r.common_input.has_value();
    for (std::size_t i = 0; i < r.outputs.size(); ++i) {
      if (!r.honest[i]) continue;
      const auto& o = r.outputs[i];
      if (!o || !o->value) {
        if (o) ++g.bottom_outputs;
        ok = false;
      } else if (*o->value != *r.common_input) {
        ok = false;
      }
    }
    if (!ok) ++g.validity_fail, g.remember(c, "validity");
  }
}

GridTally run_grid(bool equal_inputs, std::size_t seeds, std::size_t len_bits, std::ostream* progress) {
  GridTally g;
  for (auto [n, t] : kGrid)
    for (AdversaryKind adv : adversary_catalog())
      for (SchedulerKind sch : scheduler_catalog())
        for (std::size_t s = 0; s < seeds; ++s) {
          SimConfig c;
          c.n = n;
          c.t = t;
          c.seed = 1000 + s;
          c.msg_len_bits = len_bits;
          c.adversary = adv;
          c.scheduler = sch;
          c.abba = (s % 2 == 0) ? AbbaKind::Oracle : AbbaKind::Coin;
          if (!equal_inputs) c.inputs = mixed_inputs(n, c.seed, c.payload_bytes());
          tally(g, run(c), equal_inputs);
        }
  if (progress)
    *progress << "  " << (equal_inputs ? "equal" : "mixed") << "-input grid: " << g.runs << " runs\n";
  return g;
}

std::string fmt_failures(const GridTally& g) {
  std::string s;
  for (const auto& f : g.first_failures) s += " [" + f + "]";
  return s;
}

// Degree < k polynomial search over GF(q): the unique codeword within distance e of `rx`, if any.
std::optional<std::vector<Elem>> brute_force(const ReedSolomon& rs, const std::vector<Elem>& rx, std::size_t e) {
  const std::uint32_t q = rs.field().modulus();
  std::optional<std::vector<Elem>> found;
  std::size_t hits = 0;
  std::vector<Elem> coeffs(rs.k(), 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < rs.k(); ++i) total *= q;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t v = idx;
    for (auto& c : coeffs) {
      c = static_cast<Elem>(v % q);
      v /= q;
    }
    const auto cw = rs.encode(coeffs);
    std::size_t d = 0;
    for (std::size_t j = 0; j < cw.size(); ++j) d += cw[j] != rx[j];
    if (d <= e) {
      found = coeffs;
      ++hits;
    }
  }
  if (hits != 1) return std::nullopt;
  return found;
}

CriterionResult criterion6(std::size_t oec_schedules) {
  CriterionResult r{6, "ECC/OEC unit oracle", true, ""};
  const CodeParams p = CodeParams::custom(6, 1, 2, 7, 1);
  const ReedSolomon rs(p.field(), 6, 2);
  std::size_t patterns = 0, disagree = 0;
  for (Elem a0 = 0; a0 < 7; ++a0)
    for (Elem a1 = 0; a1 < 7; ++a1) {
      const std::vector<Elem> msg{a0, a1};
      const auto cw = rs.encode(msg);
      // every error vector of weight <= 2
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j)
          for (Elem di = 0; di < 7; ++di)
            for (Elem dj = 0; dj < 7; ++dj) {
              if (i == j && dj != 0) continue;
              auto rx = cw;
              rx[i] = (rx[i] + di) % 7;
              rx[j] = (rx[j] + dj) % 7;
              std::map<std::size_t, Symbol> shares;
              for (std::size_t x = 0; x < 6; ++x) shares[x + 1] = Symbol{rx[x]};
              const auto got = decode_elements(p, shares);
              const auto want = brute_force(rs, rx, 2);
              ++patterns;
              const bool same = got.has_value() == want.has_value() && (!got || (*got)[0] == *want) &&
                                (!got || *want == msg);
              if (!same) ++disagree;
            }
    }

  std::mt19937_64 g(42);
  const CodeParams op = params_for_payload(7, 2, 16);
  std::size_t over = 0, wrong = 0, max_extra = 0, max_attempts = 0;
  for (std::size_t s = 0; s < oec_schedules; ++s) {
    Bytes m(16);
    for (auto& b : m) b = static_cast<std::uint8_t>(g());
    auto shares = ecc_encode(op, m);
    std::vector<std::size_t> order(7);
    for (std::size_t i = 0; i < 7; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), g);
    const std::size_t bad = g() % 3;
    std::vector<std::size_t> corrupt(order.begin(), order.end());
    std::shuffle(corrupt.begin(), corrupt.end(), g);
    corrupt.resize(bad);
    if (g() & 1) {
      // garbage first: the worst case for the retry count
      std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
        return std::find(corrupt.begin(), corrupt.end(), i) != corrupt.end();
      });
    }
    for (std::size_t i : corrupt)
      for (auto& e : shares[i].elems) e = static_cast<Elem>((e + 1 + g() % (op.q - 1)) % op.q);
    OecAccumulator acc(op);
    std::size_t submitted = 0, extra = 0;
    for (std::size_t i : order) {
      acc.submit(shares[i]);
      ++submitted;
      if (acc.done()) break;
      if (submitted >= acc.threshold()) ++extra;
    }
    max_extra = std::max(max_extra, extra);
    max_attempts = std::max(max_attempts, acc.decode_attempts());
    if (!acc.done() || *acc.decoded() != m) ++wrong;
    if (extra > op.t) ++over;
  }
  r.pass = disagree == 0 && over == 0 && wrong == 0;
  std::ostringstream os;
  os << patterns << " GF(7) patterns, " << disagree << " disagreements; " << oec_schedules
     << " OEC schedules, max extra submissions " << max_extra << " (bound " << op.t << "), max decode attempts "
     << max_attempts << ", " << wrong << " wrong";
  r.detail = os.str();
  return r;
}

CriterionResult criterion5(std::size_t seeds) {
  CriterionResult r{5, "communication scaling", false, ""};
  SimConfig base;
  base.msg_len_bits = 4096;
  base.abba = AbbaKind::Oracle;
  base.count_abba_bits = false;
  const SweepResult res = sweep(grid_over_n(base, {4, 7, 13, 25, 49}), seeds);
  std::size_t abba_err = 0, failures = 0;
  std::ostringstream os;
  os << "ratio by n:";
  for (const SweepRow& row : res.rows) {
    abba_err += row.abba_instance_errors;
    failures += row.violations + row.liveness_failures;
    os << " " << row.config.n << "->" << std::round(row.ratio * 100) / 100 << " (depth " << row.max_rounds << ")";
  }
  os << "; spread " << std::round(res.spread() * 1000) / 1000 << " (limit 3); single ABBA violations " << abba_err;
  r.pass = res.spread() <= 3.0 && abba_err == 0 && failures == 0;
  r.detail = os.str();
  return r;
}

CriterionResult criterion7(std::size_t seeds) {
  CriterionResult r{7, "RBA/RBC", true, ""};
  std::size_t runs = 0, fails = 0, stalls = 0;
  std::vector<std::string> first;
  auto check = [&](const RunReport& rep) {
    ++runs;
    const bool bad = !rep.props.consistency || !rep.props.totality || !rep.props.validity.value_or(true);
    if (bad || rep.liveness_failure()) {
      bad ? ++fails : ++stalls;
      if (first.size() < 3) {
        std::ostringstream os;
        os << to_string(rep.config.protocol) << " adv=" << to_string(rep.config.adversary)
           << " seed=" << rep.config.seed << (rep.config.byzantine_leader ? " byz-leader" : "");
        first.push_back(os.str());
      }
    }
  };
  for (AdversaryKind adv : adversary_catalog())
    for (SchedulerKind sch : scheduler_catalog())
      for (std::size_t s = 0; s < seeds; ++s) {
        SimConfig c;
        c.n = 7;
        c.t = 2;
        c.seed = 500 + s;
        c.msg_len_bits = 128;
        c.adversary = adv;
        c.scheduler = sch;
        c.abba = (s % 2 == 0) ? AbbaKind::Oracle : AbbaKind::Coin;
        c.protocol = ProtocolKind::Rba;
        if (s % 2 == 1) c.inputs = mixed_inputs(7, c.seed, c.payload_bytes());
        check(run(c));
        c.inputs.clear();
        c.protocol = ProtocolKind::Rbc;
        c.leader = static_cast<NodeId>(s % 7);
        c.rbc_balanced = s % 4 != 3;
        c.byzantine_leader = false;
        check(run(c));
        c.byzantine_leader = true;
        c.byzantine = {c.leader};
        check(run(c));
      }

  SimConfig e;
  e.n = 7;
  e.t = 2;
  e.msg_len_bits = 4096;
  e.protocol = ProtocolKind::Rbc;
  const RunReport bal = run(e);
  e.rbc_balanced = false;
  const RunReport unbal = run(e);
  const double cb = static_cast<double>(bal.params.symbol_bits());
  const double limit = 1.5 * (4096.0 + 7.0 * cb);
  const double be = static_cast<double>(bal.metrics.dispersal_egress[0]);
  const double ue = static_cast<double>(unbal.metrics.dispersal_egress[0]);
  const bool egress_ok = be <= limit && ue >= 7.0 * 4096.0;

  r.pass = fails == 0 && stalls == 0 && egress_ok;
  std::ostringstream os;
  os << runs << " runs, " << fails << " property failures, " << stalls << " stalls; leader egress balanced " << be
     << " <= " << limit << ", unbalanced " << ue << " >= " << 7 * 4096;
  for (const auto& f : first) os << " [" << f << "]";
  r.detail = os.str();
  return r;
}

CriterionResult criterion8(std::size_t seeds) {
  CriterionResult r{8, "small_t committee", true, ""};
  std::size_t runs = 0, fails = 0;
  for (AdversaryKind adv : {AdversaryKind::None, AdversaryKind::CrashSilent, AdversaryKind::GarbageShares,
                            AdversaryKind::RandomByzantine})
    for (std::size_t s = 0; s < seeds; ++s) {
      SimConfig c;
      c.n = 31;
      c.t = 2;
      c.seed = 700 + s;
      c.msg_len_bits = 1024;
      c.protocol = ProtocolKind::SmallT;
      c.adversary = adv;
      c.scheduler = scheduler_catalog()[s % 3];
      const RunReport rep = run(c);
      ++runs;
      bool ok = rep.props.safety_ok() && !rep.liveness_failure();
      for (std::size_t i = 0; i < rep.outputs.size(); ++i)
        if (rep.honest[i] && (!rep.outputs[i] || rep.outputs[i]->value != rep.common_input)) ok = false;
      if (!ok) ++fails;
    }
  SimConfig small;
  small.n = 31;
  small.t = 2;
  small.msg_len_bits = 4096;
  small.protocol = ProtocolKind::SmallT;
  SimConfig full = small;
  full.t = 10;
  full.protocol = ProtocolKind::Acool;
  const auto sb = run(small).metrics.bits_total;
  const auto fb = run(full).metrics.bits_total;
  r.pass = fails == 0 && sb < fb;
  std::ostringstream os;
  os << runs << " runs at n=31 t=2, " << fails << " failures; bits small_t " << sb << " vs full (t=10) " << fb;
  r.detail = os.str();
  return r;
}

std::string replay_blob(SimConfig c) {
  c.record_events = true;
  const RunReport rep = run(c);
  return report_json(rep, true) + "\n" + events_ndjson(rep);
}

CriterionResult criterion9() {
  CriterionResult r{9, "deterministic replay", true, ""};
  std::vector<SimConfig> cases;
  SimConfig legacy = scenario_split_input(7, 2, std::nullopt, 3, 64);
  legacy.legacy_cool = true;  // a liveness failure, replayed like any failing run
  cases.push_back(legacy);
  cases.push_back(scenario_split_input(10, 3, std::nullopt, 5, 64));
  for (AdversaryKind adv : adversary_catalog()) {
    SimConfig c;
    c.n = 7;
    c.t = 2;
    c.seed = 77;
    c.msg_len_bits = 64;
    c.adversary = adv;
    c.scheduler = SchedulerKind::AdversaryDirected;
    c.abba = AbbaKind::Coin;
    c.inputs = mixed_inputs(7, c.seed, c.payload_bytes());
    cases.push_back(c);
  }
  std::size_t mismatches = 0;
  for (const SimConfig& c : cases)
    if (replay_blob(c) != replay_blob(c)) ++mismatches;
  r.pass = mismatches == 0;
  r.detail = std::to_string(cases.size()) + " configs replayed, " + std::to_string(mismatches) + " differ";
  return r;
}

bool wanted(const AcceptOptions& o, int id) {
  return o.only.empty() || std::find(o.only.begin(), o.only.end(), id) != o.only.end();
}

}  // namespace

std::vector<CriterionResult> acceptance(const AcceptOptions& opt, std::ostream* progress) {
  const std::size_t seeds = opt.seeds ? opt.seeds : (opt.quick ? 20 : 200);
  const std::size_t small_seeds = std::max<std::size_t>(2, seeds / 20);
  std::vector<CriterionResult> out;

  const bool grid = wanted(opt, 1) || wanted(opt, 2) || wanted(opt, 3) || wanted(opt, 4);
  if (grid) {
    const auto t0 = Clock::now();
    const GridTally mixed = run_grid(false, seeds, 64, progress);
    const GridTally equal = run_grid(true, seeds, 64, progress);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const std::size_t total = mixed.runs + equal.runs;

    if (wanted(opt, 1)) {
      const std::size_t f = mixed.consistency_fail + equal.consistency_fail;
      out.push_back({1, "safety sweep (consistency)", f == 0 && secs < 300,
                     std::to_string(total) + " runs, " + std::to_string(f) + " consistency failures, " +
                         std::to_string(static_cast<long>(secs)) + "s" + fmt_failures(mixed)});
    }
    if (wanted(opt, 2)) {
      out.push_back({2, "validity", equal.validity_fail == 0,
                     std::to_string(equal.runs) + " equal-input runs, " + std::to_string(equal.validity_fail) +
                         " failures, " + std::to_string(equal.bottom_outputs) + " bottom outputs" +
                         fmt_failures(equal)});
    }
    if (wanted(opt, 3)) {
      std::size_t split_fail = 0, legacy_stalls = 0, split_runs = 0;
      for (auto [n, t] : kGrid) {
        if (t < 2) continue;
        for (std::size_t s = 0; s < small_seeds * 5; ++s) {
          for (SchedulerKind sch : scheduler_catalog()) {
            SimConfig c = scenario_split_input(n, t, std::nullopt, 3000 + s, 64);
            c.scheduler = sch;
            c.abba = (s % 2 == 0) ? AbbaKind::Oracle : AbbaKind::Coin;
            const RunReport a = run(c);
            ++split_runs;
            if (a.status != RunStatus::Terminated || !a.props.safety_ok()) ++split_fail;
            c.legacy_cool = true;
            if (run(c).status != RunStatus::Terminated) ++legacy_stalls;
          }
        }
      }
      const std::size_t f = mixed.liveness_fail + equal.liveness_fail;
      out.push_back({3, "termination", f == 0 && split_fail == 0 && legacy_stalls >= 1,
                     std::to_string(total) + " runs, " + std::to_string(f) + " over cap; split-input " +
                         std::to_string(split_runs) + " runs, " + std::to_string(split_fail) +
                         " not terminated; legacy wiring stalled on " + std::to_string(legacy_stalls) + " of " +
                         std::to_string(split_runs)});
    }
    if (wanted(opt, 4)) {
      const std::size_t u = mixed.unique_fail + equal.unique_fail;
      const std::size_t s1 = mixed.s1_fail + equal.s1_fail;
      const std::size_t s2 = mixed.s2_fail + equal.s2_fail;
      out.push_back({4, "unique agreement", u == 0 && s1 == 0 && s2 == 0,
                     std::to_string(total) + " runs, " + std::to_string(u) + " Final(w,1) conflicts, " +
                         std::to_string(s1) + " runs with >2 s1 values, " + std::to_string(s2) +
                         " runs with >1 s2 value"});
    }
  }
  if (wanted(opt, 5)) out.push_back(criterion5(opt.quick ? 2 : 5));
  if (wanted(opt, 6)) out.push_back(criterion6(10000));
  if (wanted(opt, 7)) out.push_back(criterion7(small_seeds * 2));
  if (wanted(opt, 8)) out.push_back(criterion8(small_seeds));
  if (wanted(opt, 9)) out.push_back(criterion9());
  return out;
}

bool run_acceptance(const AcceptOptions& opt, std::ostream& os) {
  bool ok = true;
  for (const auto& r : acceptance(opt, &os)) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  os << (ok ? "all criteria passed" : "some criteria failed") << "\n";
  return ok;
}

}  // namespace acool
