#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acool {

/// Zero-based node identifier. Reed-Solomon evaluation points are `id + 1`.
using NodeId = std::uint32_t;
using Bytes = std::vector<std::uint8_t>;

enum class ErrorCode {
  ResilienceViolation,
  MessageTooLong,
  DecodeFailure,
  DuplicateShare,
  DuplicateInput,
  InvalidParams,
  InvalidPartition,
  InvalidConfig,
  EventCapExceeded,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Dense set of node ids with O(1) insert/contains and a cached size.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe, 0) {}

  bool insert(NodeId id) {
    if (id >= bits_.size()) bits_.resize(id + 1, 0);
    if (bits_[id]) return false;
    bits_[id] = 1;
    ++count_;
    return true;
  }

  bool contains(NodeId id) const { return id < bits_.size() && bits_[id]; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::size_t intersection_size(const NodeSet& other) const {
    std::size_t c = 0;
    const std::size_t m = std::min(bits_.size(), other.bits_.size());
    for (std::size_t i = 0; i < m; ++i) c += (bits_[i] & other.bits_[i]);
    return c;
  }

  std::size_t union_size(const NodeSet& other) const {
    return size() + other.size() - intersection_size(other);
  }

  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<NodeId>(i));
    return out;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

std::string to_hex(const Bytes& bytes);

}  // namespace acool
