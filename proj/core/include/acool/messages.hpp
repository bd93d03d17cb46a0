#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "acool/codec.hpp"
#include "acool/types.hpp"

namespace acool {

/// Which unique-agreement instance a BUA message belongs to.
enum class BuaInstance : std::uint8_t { Standalone = 0, First = 1, Second = 2 };

/// <SYMBOL, ID, (y_j^(i), y_i^(i))> sent by node i to node j.
struct SymbolMsg {
  BuaInstance instance = BuaInstance::Standalone;
  Symbol for_receiver;  // y_j^(i)
  Symbol own;           // y_i^(i)
};

/// <SI1, ID, s> (phase 1) and <SI2, ID, s> (phase 2).
struct IndicatorMsg {
  BuaInstance instance = BuaInstance::Standalone;
  std::uint8_t phase = 1;
  bool bit = false;
};

struct NewSymbolMsg {
  Symbol y;
};

struct ReadyMsg {
  bool bit = false;
};

struct CorrectSymbolMsg {
  Symbol y;
};

/// Committee -> outsider dispersal. An empty `y` is the bottom marker.
struct ShmdmMsg {
  std::optional<Symbol> y;
};

struct LeaderMsg {
  Symbol y;
};

struct InitialMsg {
  Symbol y;
};

struct LeaderMessageMsg {
  Bytes w;
};

enum class AbbaStep : std::uint8_t { Est, Aux };

struct AbbaMsg {
  AbbaStep step = AbbaStep::Est;
  std::uint32_t round = 1;
  bool bit = false;
};

using ProtocolMsg = std::variant<SymbolMsg, IndicatorMsg, NewSymbolMsg, ReadyMsg, CorrectSymbolMsg,
                                 ShmdmMsg, LeaderMsg, InitialMsg, LeaderMessageMsg, AbbaMsg>;

enum class MsgTag : std::uint8_t {
  Symbol,
  Si1,
  Si2,
  NewSymbol,
  Ready,
  CorrectSymbol,
  Shmdm,
  Leader,
  Initial,
  LeaderMessage,
  Est,
  Aux,
};
inline constexpr std::size_t kMsgTagCount = 12;

MsgTag tag_of(const ProtocolMsg& msg);
std::string_view tag_name(MsgTag tag);

/// Accounted payload size: symbols count `params.symbol_bits()`, flags one bit,
/// a full message its byte length.
std::uint64_t payload_bits(const ProtocolMsg& msg, const CodeParams& params);
/// Same message with symbols sized at their serialized width (32 bits per element).
std::uint64_t serialized_bits(const ProtocolMsg& msg);
/// Number of Symbols carried.
std::size_t symbol_count(const ProtocolMsg& msg);

using MsgPtr = std::shared_ptr<const ProtocolMsg>;

struct Envelope {
  NodeId to;
  MsgPtr msg;
};

/// Collects the messages a handler wants sent.
class Outbox {
 public:
  void send(NodeId to, ProtocolMsg msg) {
    items_.push_back({to, std::make_shared<const ProtocolMsg>(std::move(msg))});
  }
  /// Sends one shared copy to every id in [0, count).
  void broadcast(std::size_t count, ProtocolMsg msg) {
    auto ptr = std::make_shared<const ProtocolMsg>(std::move(msg));
    for (std::size_t j = 0; j < count; ++j) items_.push_back({static_cast<NodeId>(j), ptr});
  }
  void broadcast_to(const std::vector<NodeId>& targets, ProtocolMsg msg) {
    auto ptr = std::make_shared<const ProtocolMsg>(std::move(msg));
    for (NodeId j : targets) items_.push_back({j, ptr});
  }

  std::vector<Envelope> take() { return std::exchange(items_, {}); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Envelope> items_;
};

}  // namespace acool
