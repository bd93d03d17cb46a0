#include "acool/field.hpp"

#include <limits>

#include "acool/types.hpp"

namespace acool {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

std::uint32_t next_prime_at_least(std::uint32_t v) {
  std::uint64_t c = v < 2 ? 2 : v;
  while (!is_prime(c)) ++c;
  if (c > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorCode::InvalidParams, "no 32-bit prime at or above " + std::to_string(v));
  return static_cast<std::uint32_t>(c);
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q >= (1u << 31) || !is_prime(q))
    throw Error(ErrorCode::InvalidParams, "field modulus must be a prime below 2^31, got " +
                                              std::to_string(q));
}

Elem PrimeField::pow(Elem base, std::uint64_t exp) const {
  Elem result = 1 % q_;
  Elem b = base % q_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return result;
}

}  // namespace acool
