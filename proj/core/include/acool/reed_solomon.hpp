#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acool/field.hpp"

namespace acool {

/// One observed codeword position: evaluation point `x` and received value `y`.
struct Point {
  Elem x;
  Elem y;
};

/// (n, k) Reed-Solomon code over GF(q) with evaluation points 1..n.
///
/// A message is the coefficient vector (a_0, ..., a_{k-1}) of a polynomial of
/// degree < k; symbol j is its value at x = j.
class ReedSolomon {
 public:
  ReedSolomon(PrimeField field, std::size_t n, std::size_t k);

  const PrimeField& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }

  std::vector<Elem> encode(std::span<const Elem> coeffs) const;
  Elem evaluate(std::span<const Elem> coeffs, Elem x) const;

  /// Berlekamp-Welch unique decoding. Succeeds iff some polynomial of degree
  /// < k disagrees with at most floor((m - k) / 2) of the m points.
  std::optional<std::vector<Elem>> decode(std::span<const Point> points) const;

  /// Coefficients of the unique degree < k interpolant through exactly k points.
  std::vector<Elem> interpolate(std::span<const Point> points) const;

 private:
  PrimeField field_;
  std::size_t n_;
  std::size_t k_;
};

/// Precomputed map from k values at fixed abscissae to polynomial coefficients.
class Interpolator {
 public:
  Interpolator(const PrimeField& field, std::span<const Elem> xs);

  std::size_t size() const { return xs_.size(); }
  void coefficients(std::span<const Elem> ys, std::span<Elem> out) const;

 private:
  PrimeField field_;
  std::vector<Elem> xs_;
  // basis_[j * k + d]: coefficient of x^d in the j-th Lagrange basis polynomial.
  std::vector<Elem> basis_;
};

}  // namespace acool
