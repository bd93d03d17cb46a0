#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "acceptance.hpp"
#include "acool/small_t.hpp"
#include "acool/sweep.hpp"

namespace {

using namespace acool;

struct Args {
  SimConfig cfg;
  std::string protocol = "auto";
  std::string adversary = "none";
  std::string scheduler = "uniform";
  std::string abba = "oracle";
  std::string scenario;
  std::string out;
  bool unbalanced = false;
  bool events = false;
  std::size_t small_t_ratio = 2;
  std::size_t seeds = 1;
};

void add_config_options(CLI::App* app, Args& a) {
  SimConfig& c = a.cfg;
  app->add_option("--protocol", a.protocol, "auto|acool|rba|rbc|small_t")->envname("ACOOL_PROTOCOL")
      ->capture_default_str();
  app->add_option("--n", c.n, "number of nodes")->envname("ACOOL_N")->capture_default_str();
  app->add_option("--t", c.t, "fault bound")->envname("ACOOL_T")->capture_default_str();
  app->add_option("--len", c.msg_len_bits, "message length in bits")->envname("ACOOL_LEN")->capture_default_str();
  app->add_option("--seed", c.seed, "first seed")->envname("ACOOL_SEED")->capture_default_str();
  app->add_option("--adversary", a.adversary,
                  "none|crash_silent|equivocate_symbols|garbage_shares|withhold_from_subset|"
                  "split_input_builder|ready_spammer|random_byzantine")
      ->envname("ACOOL_ADVERSARY")->capture_default_str();
  app->add_option("--scheduler", a.scheduler, "uniform|lifo|adversary|fifo")->envname("ACOOL_SCHEDULER")
      ->capture_default_str();
  app->add_option("--abba", a.abba, "oracle|coin")->envname("ACOOL_ABBA")->capture_default_str();
  app->add_option("--scenario", a.scenario, "named scenario (see scenario-list)")->envname("ACOOL_SCENARIO");
  app->add_flag("--skip-brba", c.skip_brba, "feed the ABBA output straight to v_out")->envname("ACOOL_SKIP_BRBA");
  app->add_flag("--legacy-cool", c.legacy_cool, "BUA1 -> ABBA wiring without the calibration path")
      ->envname("ACOOL_LEGACY_COOL");
  app->add_flag("--count-abba-bits", c.count_abba_bits, "include ABBA traffic in bit totals")
      ->envname("ACOOL_COUNT_ABBA_BITS");
  app->add_flag("--count-byzantine-bits", c.count_byzantine_bits, "include Byzantine senders in bit totals")
      ->envname("ACOOL_COUNT_BYZANTINE_BITS");
  app->add_option("--byzantine", c.byzantine, "explicit Byzantine ids")->envname("ACOOL_BYZANTINE")
      ->delimiter(',');
  app->add_option("--victims", c.victims, "ids targeted by withholding / delays")->envname("ACOOL_VICTIMS")
      ->delimiter(',');
  app->add_option("--leader", c.leader, "RBC leader")->envname("ACOOL_LEADER")->capture_default_str();
  app->add_flag("--unbalanced", a.unbalanced, "RBC leader sends the full message")->envname("ACOOL_UNBALANCED");
  app->add_flag("--byzantine-leader", c.byzantine_leader, "RBC leader may be Byzantine")
      ->envname("ACOOL_BYZANTINE_LEADER");
  app->add_option("--event-cap", c.event_cap, "delivery cap")->envname("ACOOL_EVENT_CAP")->capture_default_str();
  app->add_option("--fairness-window", c.fairness_window, "0 selects 8 n^2")->envname("ACOOL_FAIRNESS_WINDOW")
      ->capture_default_str();
  app->add_option("--small-t-ratio", a.small_t_ratio, "auto picks small_t when n >= ratio * (3t+1)")
      ->envname("ACOOL_SMALL_T_RATIO")->capture_default_str();
  app->add_flag("--events", a.events, "record the event log")->envname("ACOOL_EVENTS");
  app->add_option("--out", a.out, "write output to this path instead of stdout")->envname("ACOOL_OUT");
}

SimConfig resolve(Args& a) {
  SimConfig c = a.cfg;
  if (a.scenario == "split-input") {
    SimConfig s = scenario_split_input(c.n, c.t, std::nullopt, c.seed, c.msg_len_bits);
    s.scheduler = parse_scheduler(a.scheduler);
    s.abba = parse_abba(a.abba);
    s.skip_brba = c.skip_brba;
    s.legacy_cool = c.legacy_cool;
    s.count_abba_bits = c.count_abba_bits;
    s.count_byzantine_bits = c.count_byzantine_bits;
    s.event_cap = c.event_cap;
    s.fairness_window = c.fairness_window;
    s.record_events = a.events;
    return s;
  }
  if (!a.scenario.empty() && a.scenario != "fault-free")
    throw Error(ErrorCode::InvalidConfig, "unknown scenario: " + a.scenario);
  if (a.protocol == "auto")
    c.protocol = prefer_small_t(c.n, c.t, a.small_t_ratio) ? ProtocolKind::SmallT : ProtocolKind::Acool;
  else
    c.protocol = parse_protocol(a.protocol);
  c.adversary = parse_adversary(a.adversary);
  c.scheduler = parse_scheduler(a.scheduler);
  c.abba = parse_abba(a.abba);
  c.rbc_balanced = !a.unbalanced;
  c.record_events = a.events;
  return c;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write " + out);
  f << text;
}

int exit_code(const RunReport& r) {
  if (!r.props.safety_ok()) return 2;
  if (r.liveness_failure()) return 3;
  return 0;
}

int cmd_run(Args& a) {
  const SimConfig cfg = resolve(a);
  const RunReport rep = run(cfg);
  emit(a.out, report_json(rep, a.events) + "\n");
  if (a.events && !a.out.empty()) emit(a.out + ".events.ndjson", events_ndjson(rep));
  return exit_code(rep);
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stoul(item));
  return v;
}

int cmd_sweep(Args& a, const std::string& ns, const std::string& lens) {
  const SimConfig base = resolve(a);
  std::vector<SimConfig> grid{base};
  if (!ns.empty()) grid = grid_over_n(base, parse_list(ns));
  if (!lens.empty()) {
    std::vector<SimConfig> g2;
    for (const SimConfig& c : grid)
      for (const SimConfig& d : grid_over_len(c, parse_list(lens))) g2.push_back(d);
    grid = std::move(g2);
  }
  const SweepResult res = sweep(grid, a.seeds);
  emit(a.out, sweep_csv(res));
  std::cerr << "ratio spread " << res.spread() << "\n";
  for (const SweepRow& r : res.rows)
    if (r.violations) return 2;
  for (const SweepRow& r : res.rows)
    if (r.liveness_failures) return 3;
  return 0;
}

int cmd_scenarios() {
  nlohmann::ordered_json j;
  j["scenarios"] = {
      {{"name", "fault-free"}, {"description", "common input, no adversary"}},
      {{"name", "split-input"},
       {"description", "|A1| = n - t - |F| hold w1, t hold w2, Byzantine nodes back w2 and withhold from A1"}}};
  nlohmann::ordered_json advs = nlohmann::ordered_json::array();
  for (AdversaryKind k : adversary_catalog()) advs.push_back(std::string(to_string(k)));
  j["adversaries"] = advs;
  nlohmann::ordered_json sch = nlohmann::ordered_json::array();
  for (SchedulerKind k : scheduler_catalog()) sch.push_back(std::string(to_string(k)));
  sch.push_back(std::string(to_string(SchedulerKind::Fifo)));
  j["schedulers"] = sch;
  j["protocols"] = {"auto", "acool", "rba", "rbc", "small_t"};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acool: asynchronous Byzantine agreement simulator"};
  app.require_subcommand(1);
  Args a;

  auto* run_cmd = app.add_subcommand("run", "run one configuration and print the report as JSON");
  add_config_options(run_cmd, a);

  std::string ns, lens;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid over seeds and print CSV");
  add_config_options(sweep_cmd, a);
  sweep_cmd->add_option("--seeds", a.seeds, "seeds per grid point")->envname("ACOOL_SEEDS")->capture_default_str();
  sweep_cmd->add_option("--ns", ns, "comma-separated n values (t = (n-1)/3)");
  sweep_cmd->add_option("--lens", lens, "comma-separated message lengths in bits");

  auto* list_cmd = app.add_subcommand("scenario-list", "list scenarios, adversaries and schedulers");

  AcceptOptions acc;
  auto* acc_cmd = app.add_subcommand("accept", "run the acceptance suite and print a pass/fail table");
  acc_cmd->add_flag("--quick", acc.quick, "reduced seed counts")->envname("ACOOL_QUICK");
  acc_cmd->add_option("--seeds", acc.seeds, "seeds per grid point (0 = default)")->envname("ACOOL_SEEDS");
  acc_cmd->add_option("--only", acc.only, "criteria to run, e.g. 1,2,5")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return cmd_run(a);
    if (*sweep_cmd) return cmd_sweep(a, ns, lens);
    if (*list_cmd) return cmd_scenarios();
    if (*acc_cmd) return run_acceptance(acc, std::cout) ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad argument: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
