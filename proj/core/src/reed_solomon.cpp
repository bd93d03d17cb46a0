#include "acool/reed_solomon.hpp"

#include <cassert>

#include "acool/types.hpp"

namespace acool {

namespace {

// Solves the m x cols system in `a` (row-major, last column is the right-hand
// side) and writes one solution with free variables at zero. Returns false if
// the system is inconsistent.
bool solve_linear(const PrimeField& f, std::vector<Elem>& a, std::size_t rows, std::size_t vars,
                  std::vector<Elem>& solution) {
  const std::size_t cols = vars + 1;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < vars && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const Elem inv = f.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = a[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i * cols + vars] != 0) return false;
  solution.assign(vars, 0);
  for (std::size_t i = 0; i < r; ++i) solution[pivot_col[i]] = a[i * cols + vars];
  return true;
}

}  // namespace

ReedSolomon::ReedSolomon(PrimeField field, std::size_t n, std::size_t k)
    : field_(field), n_(n), k_(k) {
  if (k == 0 || k > n)
    throw Error(ErrorCode::InvalidParams, "RS code needs 1 <= k <= n");
  if (n + 1 > field.modulus())
    throw Error(ErrorCode::InvalidParams, "RS code needs q >= n + 1");
}

Elem ReedSolomon::evaluate(std::span<const Elem> coeffs, Elem x) const {
  Elem acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), coeffs[i]);
  return acc;
}

std::vector<Elem> ReedSolomon::encode(std::span<const Elem> coeffs) const {
  assert(coeffs.size() == k_);
  std::vector<Elem> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = evaluate(coeffs, static_cast<Elem>(j + 1));
  return out;
}

std::vector<Elem> ReedSolomon::interpolate(std::span<const Point> points) const {
  assert(points.size() == k_);
  std::vector<Elem> xs(k_), ys(k_), out(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    xs[i] = points[i].x;
    ys[i] = points[i].y;
  }
  Interpolator(field_, xs).coefficients(ys, out);
  return out;
}

std::optional<std::vector<Elem>> ReedSolomon::decode(std::span<const Point> points) const {
  const std::size_t m = points.size();
  if (m < k_) return std::nullopt;
  const std::size_t e = (m - k_) / 2;
  const PrimeField& f = field_;

  std::vector<Elem> poly;
  if (e == 0) {
    poly = interpolate(points.first(k_));
  } else {
    const std::size_t q_len = e + k_;
    const std::size_t vars = q_len + e;
    const std::size_t cols = vars + 1;
    std::vector<Elem> a(m * cols, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const Elem x = points[i].x;
      const Elem y = points[i].y;
      Elem xp = 1;
      for (std::size_t j = 0; j < q_len; ++j) {
        a[i * cols + j] = xp;
        if (j < e) a[i * cols + q_len + j] = f.neg(f.mul(y, xp));
        if (j == e) a[i * cols + vars] = f.mul(y, xp);
        xp = f.mul(xp, x);
      }
    }
    std::vector<Elem> sol;
    if (!solve_linear(f, a, m, vars, sol)) return std::nullopt;

    // Long division of Q by the monic error locator E.
    std::vector<Elem> rem(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(q_len));
    std::vector<Elem> loc(sol.begin() + static_cast<std::ptrdiff_t>(q_len), sol.end());
    loc.push_back(1);
    poly.assign(k_, 0);
    for (std::size_t d = q_len; d-- > e;) {
      const Elem lead = rem[d];
      poly[d - e] = lead;
      if (lead == 0) continue;
      for (std::size_t j = 0; j <= e; ++j)
        rem[d - e + j] = f.sub(rem[d - e + j], f.mul(lead, loc[j]));
    }
    for (std::size_t d = 0; d < e; ++d)
      if (rem[d] != 0) return std::nullopt;
  }

  std::size_t disagreements = 0;
  for (const Point& p : points)
    if (evaluate(poly, p.x) != p.y) ++disagreements;
  if (disagreements > e) return std::nullopt;
  return poly;
}

Interpolator::Interpolator(const PrimeField& field, std::span<const Elem> xs)
    : field_(field), xs_(xs.begin(), xs.end()) {
  const std::size_t k = xs_.size();
  const PrimeField& f = field_;
  basis_.assign(k * k, 0);
  std::vector<Elem> num;
  for (std::size_t j = 0; j < k; ++j) {
    num.assign(1, 1);
    Elem denom = 1;
    for (std::size_t m = 0; m < k; ++m) {
      if (m == j) continue;
      // num *= (x - xs[m])
      num.push_back(0);
      for (std::size_t d = num.size() - 1; d > 0; --d)
        num[d] = f.sub(num[d - 1], f.mul(num[d], xs_[m]));
      num[0] = f.neg(f.mul(num[0], xs_[m]));
      denom = f.mul(denom, f.sub(xs_[j], xs_[m]));
    }
    const Elem inv = f.inv(denom);
    for (std::size_t d = 0; d < k; ++d) basis_[j * k + d] = f.mul(num[d], inv);
  }
}

void Interpolator::coefficients(std::span<const Elem> ys, std::span<Elem> out) const {
  const std::size_t k = xs_.size();
  for (std::size_t d = 0; d < k; ++d) out[d] = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (ys[j] == 0) continue;
    for (std::size_t d = 0; d < k; ++d)
      out[d] = field_.add(out[d], field_.mul(ys[j], basis_[j * k + d]));
  }
}

}  // namespace acool
