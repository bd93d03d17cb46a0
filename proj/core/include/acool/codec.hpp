#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "acool/field.hpp"
#include "acool/reed_solomon.hpp"
#include "acool/types.hpp"

namespace acool {

/// One coded symbol: the same evaluation point taken across every chunk codeword.
using Symbol = std::vector<Elem>;

/// Parameters of the chunked (n, k) Reed-Solomon code shared by all nodes.
///
/// A message is framed (4-byte big-endian length, payload, zero fill), packed
/// into `k * chunks` field elements of `element_bits()` bits each, and split
/// into `chunks` codewords that share the evaluation points 1..n.
struct CodeParams {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t k = 1;
  std::uint32_t q = 257;
  std::size_t chunks = 1;

  /// Validating constructor for hand-picked codes (tests use GF(7)).
  static CodeParams custom(std::size_t n, std::size_t t, std::size_t k, std::uint32_t q,
                           std::size_t chunks);

  PrimeField field() const { return PrimeField(q); }
  /// floor(log2 q): payload bits carried by one field element.
  std::size_t element_bits() const;
  /// ceil(log2 q): accounted width of one field element on the wire.
  std::size_t element_width_bits() const;
  /// cb: accounted bits of one Symbol (`chunks * ceil(log2 q)`).
  std::size_t symbol_bits() const { return chunks * element_width_bits(); }
  /// Bits available for the framed message.
  std::size_t capacity_bits() const { return k * chunks * element_bits(); }
  /// Largest payload (in bytes) that fits after the length prefix.
  std::size_t max_payload_bytes() const;
  /// Decode/match threshold used by online error correction.
  std::size_t oec_threshold() const { return k + t; }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Derives the code for n nodes, fault bound t and a framed message of
/// `msg_len_bits` bits: k = max(1, floor(t/3)), q = smallest prime >=
/// max(n+1, 257). Throws ResilienceViolation when n < 3t + 1.
CodeParams derive_params(std::size_t n, std::size_t t, std::size_t msg_len_bits);

/// Code able to carry a payload of `payload_bytes` (adds the 32-bit length prefix).
CodeParams params_for_payload(std::size_t n, std::size_t t, std::size_t payload_bytes);

/// Idealised symbol size max(l/k, log2 q) for an l-bit message.
double ideal_symbol_bits(const CodeParams& params, std::size_t msg_len_bits);

struct SymbolShare {
  std::size_t index = 0;  // evaluation point, 1..n
  Symbol elems;

  friend bool operator==(const SymbolShare&, const SymbolShare&) = default;
};

/// True if `s` has exactly `chunks` elements, each inside the field.
bool well_formed(const CodeParams& params, const Symbol& s);

/// Packs `message` and returns one share per evaluation point 1..n.
std::vector<SymbolShare> ecc_encode(const CodeParams& params, const Bytes& message);

/// Per-chunk polynomial coefficients -> n shares.
std::vector<SymbolShare> encode_elements(const CodeParams& params,
                                         std::span<const std::vector<Elem>> chunk_coeffs);

/// Error-correcting decode of chunk coefficients from a partial share set.
/// Succeeds iff some codeword disagrees with at most floor((m - k) / 2) of the
/// m supplied shares.
std::optional<std::vector<std::vector<Elem>>> decode_elements(
    const CodeParams& params, const std::map<std::size_t, Symbol>& shares);

/// Decodes and unframes; nullopt on DecodeFailure.
std::optional<Bytes> try_ecc_decode(const CodeParams& params,
                                    const std::map<std::size_t, Symbol>& shares);

/// Throwing variant of try_ecc_decode.
Bytes ecc_decode(const CodeParams& params, const std::map<std::size_t, Symbol>& shares);

/// Wire form: u16 index, then `chunks` u32 elements, all big-endian.
Bytes serialize_share(const SymbolShare& share);
std::optional<SymbolShare> deserialize_share(const CodeParams& params, std::span<const std::uint8_t> in);

/// Online error correction: accumulates shares, attempting a decode at every
/// submission once k + t shares are held, and accepts a decoded message only
/// when its re-encoding matches at least k + t held shares.
class OecAccumulator {
 public:
  explicit OecAccumulator(CodeParams params, bool require_non_empty = false);

  /// Stores the share and runs one OEC step. Returns the message on the
  /// submission that completes decoding; nothing otherwise. Duplicate indices,
  /// malformed shares and submissions after completion are ignored.
  std::optional<Bytes> submit(const SymbolShare& share);

  bool contains(std::size_t index) const { return shares_.count(index) != 0; }
  bool done() const { return decoded_.has_value(); }
  const std::optional<Bytes>& decoded() const { return decoded_; }
  std::size_t size() const { return shares_.size(); }
  std::size_t threshold() const { return params_.oec_threshold(); }
  std::size_t decode_attempts() const { return attempts_; }
  std::size_t ignored() const { return ignored_; }
  const CodeParams& params() const { return params_; }

 private:
  CodeParams params_;
  bool require_non_empty_;
  std::map<std::size_t, Symbol> shares_;
  std::optional<Bytes> decoded_;
  std::size_t attempts_ = 0;
  std::size_t ignored_ = 0;
};

}  // namespace acool
