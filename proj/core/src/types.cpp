#include "acool/types.hpp"

namespace acool {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ResilienceViolation: return "ResilienceViolation";
    case ErrorCode::MessageTooLong: return "MessageTooLong";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::DuplicateShare: return "DuplicateShare";
    case ErrorCode::DuplicateInput: return "DuplicateInput";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EventCapExceeded: return "EventCapExceeded";
  }
  return "Unknown";
}

std::string to_hex(const Bytes& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace acool
