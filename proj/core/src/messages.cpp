#include "acool/messages.hpp"

namespace acool {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

MsgTag tag_of(const ProtocolMsg& msg) {
  return std::visit(
      overloaded{
          [](const SymbolMsg&) { return MsgTag::Symbol; },
          [](const IndicatorMsg& m) { return m.phase == 1 ? MsgTag::Si1 : MsgTag::Si2; },
          [](const NewSymbolMsg&) { return MsgTag::NewSymbol; },
          [](const ReadyMsg&) { return MsgTag::Ready; },
          [](const CorrectSymbolMsg&) { return MsgTag::CorrectSymbol; },
          [](const ShmdmMsg&) { return MsgTag::Shmdm; },
          [](const LeaderMsg&) { return MsgTag::Leader; },
          [](const InitialMsg&) { return MsgTag::Initial; },
          [](const LeaderMessageMsg&) { return MsgTag::LeaderMessage; },
          [](const AbbaMsg& m) { return m.step == AbbaStep::Est ? MsgTag::Est : MsgTag::Aux; },
      },
      msg);
}

std::string_view tag_name(MsgTag tag) {
  switch (tag) {
    case MsgTag::Symbol: return "SYMBOL";
    case MsgTag::Si1: return "SI1";
    case MsgTag::Si2: return "SI2";
    case MsgTag::NewSymbol: return "NEWSYMBOL";
    case MsgTag::Ready: return "READY";
    case MsgTag::CorrectSymbol: return "CORRECTSYMBOL";
    case MsgTag::Shmdm: return "SHMDM";
    case MsgTag::Leader: return "LEADER";
    case MsgTag::Initial: return "INITIAL";
    case MsgTag::LeaderMessage: return "LEADERMESSAGE";
    case MsgTag::Est: return "EST";
    case MsgTag::Aux: return "AUX";
  }
  return "?";
}

std::size_t symbol_count(const ProtocolMsg& msg) {
  return std::visit(overloaded{
                        [](const SymbolMsg&) -> std::size_t { return 2; },
                        [](const NewSymbolMsg&) -> std::size_t { return 1; },
                        [](const CorrectSymbolMsg&) -> std::size_t { return 1; },
                        [](const ShmdmMsg& m) -> std::size_t { return m.y ? 1 : 0; },
                        [](const LeaderMsg&) -> std::size_t { return 1; },
                        [](const InitialMsg&) -> std::size_t { return 1; },
                        [](const auto&) -> std::size_t { return 0; },
                    },
                    msg);
}

std::uint64_t payload_bits(const ProtocolMsg& msg, const CodeParams& params) {
  if (const auto* lm = std::get_if<LeaderMessageMsg>(&msg)) return 8ULL * lm->w.size();
  const std::size_t symbols = symbol_count(msg);
  if (symbols > 0) return symbols * params.symbol_bits();
  return 1;
}

std::uint64_t serialized_bits(const ProtocolMsg& msg) {
  return std::visit(overloaded{
                        [](const SymbolMsg& m) -> std::uint64_t {
                          return 32ULL * (m.for_receiver.size() + m.own.size());
                        },
                        [](const NewSymbolMsg& m) -> std::uint64_t { return 32ULL * m.y.size(); },
                        [](const CorrectSymbolMsg& m) -> std::uint64_t { return 32ULL * m.y.size(); },
                        [](const ShmdmMsg& m) -> std::uint64_t { return m.y ? 32ULL * m.y->size() : 1; },
                        [](const LeaderMsg& m) -> std::uint64_t { return 32ULL * m.y.size(); },
                        [](const InitialMsg& m) -> std::uint64_t { return 32ULL * m.y.size(); },
                        [](const LeaderMessageMsg& m) -> std::uint64_t { return 8ULL * m.w.size(); },
                        [](const auto&) -> std::uint64_t { return 1; },
                    },
                    msg);
}

}  // namespace acool
