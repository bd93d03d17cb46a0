#include "acool/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "acool/rng.hpp"

namespace acool {

namespace {

constexpr std::size_t kLengthPrefixBits = 32;

class BitWriter {
 public:
  void put(std::uint64_t value, std::size_t bits) {
    for (std::size_t i = bits; i-- > 0;) bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1));
  }
  void put_bytes(const Bytes& bytes) {
    for (std::uint8_t b : bytes) put(b, 8);
  }
  std::vector<std::uint8_t>& bits() { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

std::vector<std::vector<Elem>> pack(const CodeParams& p, const Bytes& message) {
  const std::size_t framed = kLengthPrefixBits + 8 * message.size();
  if (framed > p.capacity_bits() || message.size() > 0xffffffffULL)
    throw Error(ErrorCode::MessageTooLong, std::to_string(framed) + " framed bits exceed capacity " +
                                               std::to_string(p.capacity_bits()));
  BitWriter w;
  w.put(message.size(), kLengthPrefixBits);
  w.put_bytes(message);
  auto& bits = w.bits();
  bits.resize(p.capacity_bits(), 0);

  const std::size_t eb = p.element_bits();
  std::vector<std::vector<Elem>> chunks(p.chunks, std::vector<Elem>(p.k, 0));
  std::size_t pos = 0;
  for (std::size_t c = 0; c < p.chunks; ++c) {
    for (std::size_t d = 0; d < p.k; ++d) {
      Elem v = 0;
      for (std::size_t b = 0; b < eb; ++b) v = (v << 1) | bits[pos++];
      chunks[c][d] = v;
    }
  }
  return chunks;
}

std::optional<Bytes> unpack(const CodeParams& p, const std::vector<std::vector<Elem>>& chunks) {
  const std::size_t eb = p.element_bits();
  std::vector<std::uint8_t> bits;
  bits.reserve(p.capacity_bits());
  for (const auto& chunk : chunks) {
    for (Elem v : chunk) {
      if (eb < 32 && (v >> eb) != 0) return std::nullopt;
      for (std::size_t b = eb; b-- > 0;) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
  }
  if (bits.size() < kLengthPrefixBits) return std::nullopt;
  std::uint64_t len = 0;
  for (std::size_t i = 0; i < kLengthPrefixBits; ++i) len = (len << 1) | bits[i];
  if (kLengthPrefixBits + 8 * len > bits.size()) return std::nullopt;
  Bytes out(len, 0);
  std::size_t pos = kLengthPrefixBits;
  for (std::size_t i = 0; i < len; ++i) {
    std::uint8_t byte = 0;
    for (int b = 0; b < 8; ++b) byte = static_cast<std::uint8_t>((byte << 1) | bits[pos++]);
    out[i] = byte;
  }
  for (; pos < bits.size(); ++pos)
    if (bits[pos] != 0) return std::nullopt;
  return out;
}

}  // namespace

CodeParams CodeParams::custom(std::size_t n, std::size_t t, std::size_t k, std::uint32_t q,
                              std::size_t chunks) {
  if (!is_prime(q)) throw Error(ErrorCode::InvalidParams, "q must be prime");
  if (q < n + 1) throw Error(ErrorCode::InvalidParams, "q must be at least n + 1");
  if (k == 0 || k > n) throw Error(ErrorCode::InvalidParams, "k must lie in [1, n]");
  if (chunks == 0) throw Error(ErrorCode::InvalidParams, "chunks must be positive");
  CodeParams p;
  p.n = n;
  p.t = t;
  p.k = k;
  p.q = q;
  p.chunks = chunks;
  return p;
}

std::size_t CodeParams::element_bits() const {
  return static_cast<std::size_t>(std::bit_width(q) - 1);
}

std::size_t CodeParams::element_width_bits() const {
  return static_cast<std::size_t>(std::bit_width(q - 1));
}

std::size_t CodeParams::max_payload_bytes() const {
  const std::size_t cap = capacity_bits();
  return cap < kLengthPrefixBits ? 0 : (cap - kLengthPrefixBits) / 8;
}

CodeParams derive_params(std::size_t n, std::size_t t, std::size_t msg_len_bits) {
  if (n < 3 * t + 1)
    throw Error(ErrorCode::ResilienceViolation,
                "n = " + std::to_string(n) + " < 3t + 1 = " + std::to_string(3 * t + 1));
  if (msg_len_bits == 0) throw Error(ErrorCode::InvalidParams, "message length must be positive");
  CodeParams p;
  p.n = n;
  p.t = t;
  p.k = std::max<std::size_t>(1, t / 3);
  p.q = next_prime_at_least(static_cast<std::uint32_t>(std::max<std::size_t>(n + 1, 257)));
  const std::size_t per_chunk = p.k * p.element_bits();
  p.chunks = std::max<std::size_t>(1, (msg_len_bits + per_chunk - 1) / per_chunk);
  return p;
}

CodeParams params_for_payload(std::size_t n, std::size_t t, std::size_t payload_bytes) {
  return derive_params(n, t, kLengthPrefixBits + 8 * payload_bytes);
}

double ideal_symbol_bits(const CodeParams& params, std::size_t msg_len_bits) {
  const double per_k = static_cast<double>(msg_len_bits) / static_cast<double>(params.k);
  return std::max(per_k, std::log2(static_cast<double>(params.q)));
}

bool well_formed(const CodeParams& params, const Symbol& s) {
  if (s.size() != params.chunks) return false;
  return std::all_of(s.begin(), s.end(), [&](Elem v) { return v < params.q; });
}

std::vector<SymbolShare> encode_elements(const CodeParams& params,
                                         std::span<const std::vector<Elem>> chunk_coeffs) {
  const ReedSolomon rs(params.field(), params.n, params.k);
  std::vector<SymbolShare> shares(params.n);
  for (std::size_t j = 0; j < params.n; ++j) {
    shares[j].index = j + 1;
    shares[j].elems.resize(params.chunks);
  }
  for (std::size_t c = 0; c < params.chunks; ++c) {
    for (std::size_t j = 0; j < params.n; ++j)
      shares[j].elems[c] = rs.evaluate(chunk_coeffs[c], static_cast<Elem>(j + 1));
  }
  return shares;
}

std::vector<SymbolShare> ecc_encode(const CodeParams& params, const Bytes& message) {
  const auto chunks = pack(params, message);
  return encode_elements(params, chunks);
}

std::optional<std::vector<std::vector<Elem>>> decode_elements(
    const CodeParams& params, const std::map<std::size_t, Symbol>& shares) {
  const PrimeField f = params.field();
  const ReedSolomon rs(f, params.n, params.k);
  const Symbol zero(params.chunks, 0);

  std::vector<Elem> xs;
  std::vector<const Symbol*> ys;
  for (const auto& [index, sym] : shares) {
    if (index == 0 || index > params.n) continue;
    xs.push_back(static_cast<Elem>(index));
    ys.push_back(well_formed(params, sym) ? &sym : &zero);
  }
  const std::size_t m = xs.size();
  if (m < params.k) return std::nullopt;
  const std::size_t radius = (m - params.k) / 2;

  // Locate share-level errors on a random linear combination of the chunks.
  std::vector<Elem> alpha(params.chunks);
  for (std::size_t c = 0; c < params.chunks; ++c)
    alpha[c] = static_cast<Elem>(1 + splitmix64(c) % (params.q - 1));
  std::vector<Point> combined(m);
  for (std::size_t i = 0; i < m; ++i) {
    Elem acc = 0;
    const Symbol& s = *ys[i];
    for (std::size_t c = 0; c < params.chunks; ++c) acc = f.add(acc, f.mul(alpha[c], s[c]));
    combined[i] = {xs[i], acc};
  }
  const auto folded = rs.decode(combined);
  if (!folded) return std::nullopt;

  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < m; ++i)
    if (rs.evaluate(*folded, combined[i].x) == combined[i].y) good.push_back(i);

  std::vector<std::vector<Elem>> coeffs(params.chunks, std::vector<Elem>(params.k));
  std::vector<Elem> base_x(params.k);
  for (std::size_t d = 0; d < params.k; ++d) base_x[d] = xs[good[d]];
  const Interpolator interp(f, base_x);
  std::vector<Elem> base_y(params.k);
  bool consistent = true;
  for (std::size_t c = 0; c < params.chunks && consistent; ++c) {
    for (std::size_t d = 0; d < params.k; ++d) base_y[d] = (*ys[good[d]])[c];
    interp.coefficients(base_y, coeffs[c]);
    for (std::size_t g = params.k; g < good.size(); ++g) {
      if (rs.evaluate(coeffs[c], xs[good[g]]) != (*ys[good[g]])[c]) {
        consistent = false;
        break;
      }
    }
  }
  if (consistent) return coeffs;

  // Errors cancelled in the combination: decode every chunk on its own.
  std::vector<std::uint8_t> wrong(m, 0);
  std::vector<Point> pts(m);
  for (std::size_t c = 0; c < params.chunks; ++c) {
    for (std::size_t i = 0; i < m; ++i) pts[i] = {xs[i], (*ys[i])[c]};
    auto poly = rs.decode(pts);
    if (!poly) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i)
      if (rs.evaluate(*poly, pts[i].x) != pts[i].y) wrong[i] = 1;
    coeffs[c] = std::move(*poly);
  }
  if (static_cast<std::size_t>(std::count(wrong.begin(), wrong.end(), 1)) > radius)
    return std::nullopt;
  return coeffs;
}

std::optional<Bytes> try_ecc_decode(const CodeParams& params,
                                    const std::map<std::size_t, Symbol>& shares) {
  auto coeffs = decode_elements(params, shares);
  if (!coeffs) return std::nullopt;
  return unpack(params, *coeffs);
}

Bytes ecc_decode(const CodeParams& params, const std::map<std::size_t, Symbol>& shares) {
  auto out = try_ecc_decode(params, shares);
  if (!out)
    throw Error(ErrorCode::DecodeFailure,
                "no codeword within the unique-decoding radius of " + std::to_string(shares.size()) +
                    " shares");
  return *out;
}

Bytes serialize_share(const SymbolShare& share) {
  Bytes out;
  out.reserve(2 + 4 * share.elems.size());
  out.push_back(static_cast<std::uint8_t>(share.index >> 8));
  out.push_back(static_cast<std::uint8_t>(share.index));
  for (Elem e : share.elems)
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(e >> s));
  return out;
}

std::optional<SymbolShare> deserialize_share(const CodeParams& params,
                                             std::span<const std::uint8_t> in) {
  if (in.size() != 2 + 4 * params.chunks) return std::nullopt;
  SymbolShare share;
  share.index = (static_cast<std::size_t>(in[0]) << 8) | in[1];
  if (share.index == 0 || share.index > params.n) return std::nullopt;
  share.elems.resize(params.chunks);
  for (std::size_t c = 0; c < params.chunks; ++c) {
    Elem v = 0;
    for (int b = 0; b < 4; ++b) v = (v << 8) | in[2 + 4 * c + b];
    share.elems[c] = v;
  }
  if (!well_formed(params, share.elems)) return std::nullopt;
  return share;
}

OecAccumulator::OecAccumulator(CodeParams params, bool require_non_empty)
    : params_(params), require_non_empty_(require_non_empty) {}

std::optional<Bytes> OecAccumulator::submit(const SymbolShare& share) {
  if (done() || share.index == 0 || share.index > params_.n || contains(share.index) ||
      !well_formed(params_, share.elems)) {
    ++ignored_;
    return std::nullopt;
  }
  shares_.emplace(share.index, share.elems);
  if (shares_.size() < params_.oec_threshold()) return std::nullopt;

  ++attempts_;
  auto coeffs = decode_elements(params_, shares_);
  if (!coeffs) return std::nullopt;
  auto message = unpack(params_, *coeffs);
  if (!message || (require_non_empty_ && message->empty())) return std::nullopt;
  const auto reencoded = encode_elements(params_, *coeffs);
  std::size_t matches = 0;
  for (const auto& [index, elems] : shares_)
    if (reencoded[index - 1].elems == elems) ++matches;
  if (matches < params_.oec_threshold()) return std::nullopt;
  decoded_ = std::move(message);
  return decoded_;
}

}  // namespace acool
