#pragma once

#include <cstdint>

namespace acool {

using Elem = std::uint32_t;

bool is_prime(std::uint64_t v);
std::uint32_t next_prime_at_least(std::uint32_t v);

/// Arithmetic in GF(q) for a prime q < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const { return q_; }
  bool contains(Elem v) const { return v < q_; }

  Elem add(Elem a, Elem b) const {
    const Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + q_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  Elem pow(Elem base, std::uint64_t exp) const;
  /// Multiplicative inverse; `a` must be non-zero.
  Elem inv(Elem a) const { return pow(a, q_ - 2); }

 private:
  std::uint32_t q_;
};

}  // namespace acool
