#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "acool/abba.hpp"
#include "acool/codec.hpp"
#include "acool/messages.hpp"
#include "acool/node.hpp"

namespace acool {

enum class ProtocolKind : std::uint8_t { Acool, Rba, Rbc, SmallT };
enum class AdversaryKind : std::uint8_t {
  None,
  CrashSilent,
  EquivocateSymbols,
  GarbageShares,
  WithholdFromSubset,
  SplitInputBuilder,
  ReadySpammer,
  RandomByzantine,
};
/// Fifo delivers in send order, so causal depth equals the logical round count.
enum class SchedulerKind : std::uint8_t { Uniform, LifoBiased, AdversaryDirected, Fifo };
enum class RunStatus : std::uint8_t { Terminated, Quiescent, EventCap };

std::string_view to_string(ProtocolKind k);
std::string_view to_string(AdversaryKind k);
std::string_view to_string(SchedulerKind k);
std::string_view to_string(RunStatus s);
std::string_view to_string(AbbaKind k);
ProtocolKind parse_protocol(std::string_view s);
AdversaryKind parse_adversary(std::string_view s);
SchedulerKind parse_scheduler(std::string_view s);
AbbaKind parse_abba(std::string_view s);

/// The seven Byzantine strategies (everything except None); the three adversarial schedulers (no Fifo).
const std::vector<AdversaryKind>& adversary_catalog();
const std::vector<SchedulerKind>& scheduler_catalog();

struct SimConfig {
  std::size_t n = 4;
  std::size_t t = 1;
  std::uint64_t seed = 1;
  /// Message length in bits (rounded up to whole bytes).
  std::size_t msg_len_bits = 256;
  ProtocolKind protocol = ProtocolKind::Acool;
  AdversaryKind adversary = AdversaryKind::None;
  SchedulerKind scheduler = SchedulerKind::Uniform;
  AbbaKind abba = AbbaKind::Oracle;

  /// Per-node input; empty means every node gets one common seeded value.
  /// Entries for Byzantine ids feed their honest shadow.
  std::vector<std::optional<Bytes>> inputs;
  /// Second shadow input for split_input_builder (defaults to a fresh value).
  std::optional<Bytes> split_alt_input;
  /// Explicit Byzantine ids; when empty and adversary != None a seeded
  /// subset of size t is drawn (never containing an honest RBC leader
  /// unless `byzantine_leader`).
  std::vector<NodeId> byzantine;
  /// Targets of withholding / adversary-directed delays.
  std::vector<NodeId> victims;

  bool skip_brba = false;
  bool legacy_cool = false;
  bool count_abba_bits = false;
  bool count_byzantine_bits = false;

  NodeId leader = 0;
  bool rbc_balanced = true;
  bool byzantine_leader = false;

  /// Committee variant threshold used when protocol == SmallT.
  std::size_t event_cap = 1'000'000;
  /// 0 selects 8 n^2.
  std::size_t fairness_window = 0;
  bool record_events = false;

  std::size_t payload_bytes() const { return (msg_len_bits + 7) / 8; }
};

/// Inputs of the challenge scenario: |A1| = n - t - |F| nodes hold w1, |A2| = t
/// hold w2, the |F| = t Byzantine nodes back w2 and withhold from A1.
struct SplitPartition {
  std::size_t a1 = 0, a2 = 0, f = 0;
};
SplitPartition default_split_partition(std::size_t n, std::size_t t);
SimConfig scenario_split_input(std::size_t n, std::size_t t, std::optional<SplitPartition> partition = {},
                               std::uint64_t seed = 1, std::size_t msg_len_bits = 256);

struct Metrics {
  std::uint64_t bits_total = 0;
  std::array<std::uint64_t, kMsgTagCount> bits_by_tag{};
  std::array<std::uint64_t, kMsgTagCount> msgs_by_tag{};
  std::uint64_t serialized_bits = 0;
  double ideal_bits = 0.0;
  std::uint64_t messages = 0;
  std::uint64_t oracle_bits = 0;
  std::vector<std::uint64_t> egress;
  std::vector<std::uint64_t> dispersal_egress;
  std::uint64_t decode_attempts = 0;
  std::uint32_t max_round = 0;
  std::size_t abba_instances_min = 0;
  std::size_t abba_instances_max = 0;
  std::uint64_t max_delay = 0;
};

struct Properties {
  bool consistency = true;
  std::optional<bool> validity;
  bool termination = true;
  bool totality = true;
  bool unique_agreement = true;
  bool at_most_two_s1 = true;
  bool single_s2_value = true;
  bool single_abba = true;

  bool safety_ok() const {
    return consistency && validity.value_or(true) && totality && unique_agreement && at_most_two_s1 &&
           single_s2_value && single_abba;
  }
};

struct EventRecord {
  std::uint64_t step;
  NodeId from, to;
  MsgTag tag;
  std::uint64_t bits;
  std::uint32_t round;
};

struct RunReport {
  SimConfig config;
  CodeParams params;
  RunStatus status = RunStatus::Quiescent;
  std::uint64_t steps = 0;
  std::vector<bool> honest;
  std::vector<std::optional<Decision>> outputs;
  std::optional<Bytes> common_input;
  bool expects_termination = true;
  std::optional<bool> oracle_decision;
  Metrics metrics;
  Properties props;
  std::vector<std::string> notes;
  std::vector<EventRecord> events;

  bool liveness_failure() const { return expects_termination && status != RunStatus::Terminated; }
};

/// Deterministic single-threaded run. Throws Error on invalid configs.
RunReport run(const SimConfig& cfg);

std::string report_json(const RunReport& r, bool include_events = false);
std::string events_ndjson(const RunReport& r);
std::string metrics_csv_header();
std::string metrics_csv_row(const RunReport& r);

/// Code used for bit accounting (committee code for SmallT).
CodeParams run_params(const SimConfig& cfg);

/// n * l versus n * t * log2 q, in bits.
double complexity_bound(const SimConfig& cfg);

}  // namespace acool
