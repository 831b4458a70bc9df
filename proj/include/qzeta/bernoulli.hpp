#pragma once

// Bernoulli numbers and Bernoulli polynomials B_r(x) = sum_s C(r,s) B_{r-s} x^s,
// with the convention B_1 = -1/2.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qzeta/errors.hpp"
#include "qzeta/exact.hpp"

namespace qzeta {

/// B_0 .. B_M, stored reduced.
class BernTable {
 public:
  BernTable() = default;
  explicit BernTable(std::vector<BigRat> values) : values_(std::move(values)) {}

  int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }
  const std::vector<BigRat>& values() const noexcept { return values_; }

  const BigRat& operator[](int n) const {
    check(n);
    return values_[static_cast<std::size_t>(n)];
  }

  void check(int n) const {
    if (n < 0 || n > max_index())
      throw TableUnderflow("Bernoulli index " + std::to_string(n) + " outside table 0.." +
                           std::to_string(max_index()));
  }

 private:
  std::vector<BigRat> values_;
};

/// B_0 .. B_M from sum_{k=0}^{n} C(n+1,k) B_k = 0.
inline BernTable bernoulli_table(int M) {
  if (M < 0) throw DomainError("bernoulli_table: M must be >= 0");
  std::vector<BigRat> b;
  b.reserve(static_cast<std::size_t>(M) + 1);
  b.emplace_back(1);
  // row holds C(n+1, k) for k = 0..n+1
  std::vector<BigInt> row = {BigInt(1), BigInt(1)};
  for (int n = 1; n <= M; ++n) {
    std::vector<BigInt> next(row.size() + 1, BigInt(1));
    for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
    BigRat sum;
    for (int k = 0; k < n; ++k) {
      if (b[static_cast<std::size_t>(k)].is_zero()) continue;
      sum += BigRat(row[static_cast<std::size_t>(k)]) * b[static_cast<std::size_t>(k)];
    }
    b.push_back(-sum / BigRat(BigInt(n + 1)));
  }
  return BernTable(std::move(b));
}

/// The same numbers written over the least common denominator L of
/// B_0..B_upto: B_k = numerators[k] / L.
struct CommonDenominatorView {
  BigInt denominator;
  std::vector<BigInt> numerators;
};

inline CommonDenominatorView common_denominator(const BernTable& table, int upto) {
  table.check(upto);
  CommonDenominatorView view{BigInt(1), {}};
  for (int k = 0; k <= upto; ++k) view.denominator = lcm(view.denominator, table[k].den());
  view.numerators.reserve(static_cast<std::size_t>(upto) + 1);
  for (int k = 0; k <= upto; ++k)
    view.numerators.push_back(table[k].num() * (view.denominator / table[k].den()));
  return view;
}

/// One "index value" line per entry, values as num/den.
inline void dump(std::ostream& os, const BernTable& table) {
  for (int k = 0; k <= table.max_index(); ++k) os << k << ' ' << table[k].str() << '\n';
}

namespace detail {

inline std::vector<BigInt> binomial_row(int r) {
  std::vector<BigInt> row = {BigInt(1)};
  for (int n = 1; n <= r; ++n) {
    std::vector<BigInt> next(row.size() + 1, BigInt(1));
    for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  return row;
}

}  // namespace detail

/// B_r(alpha) term by term, each alpha^s built from scratch by repeated
/// multiplication.  Quadratic in r per call.
inline BigRat bern_poly_naive(int r, const BigRat& alpha, const BernTable& table) {
  if (r < 0) throw DomainError("bern_poly_naive: negative degree");
  table.check(r);
  const std::vector<BigInt> binom = detail::binomial_row(r);
  BigRat sum;
  for (int s = 0; s <= r; ++s) {
    const BigRat& b = table[r - s];
    if (b.is_zero()) continue;
    BigRat power(1);
    for (int i = 0; i < s; ++i) power = (i == 0) ? alpha : power * alpha;
    sum += BigRat(binom[static_cast<std::size_t>(s)]) * b * power;
  }
  return sum;
}

/// B_0(alpha) .. B_M(alpha).
struct BernPolyBatch {
  BigRat argument;
  std::vector<BigRat> values;
};

/// All of B_0(alpha)..B_M(alpha) in O(M^2) integer multiplications.
///
/// With alpha = a/b and L the common denominator of B_0..B_M, each
///   L * b^r * B_r(a/b) = sum_s C(r,s) (L B_{r-s}) b^{r-s} a^s
/// is an integer, evaluated by Horner's rule in a.  Binomials come from a
/// running Pascal row and the powers of b are shared across all r.
inline BernPolyBatch bern_poly_batch(int M, const BigRat& alpha, const BernTable& table) {
  if (M < 0) throw DomainError("bern_poly_batch: negative degree");
  table.check(M);
  CommonDenominatorView common;
  {
    UncountedScope precomputed;
    common = common_denominator(table, M);
  }
  const BigInt a = alpha.num();
  const BigInt b = alpha.den();

  std::vector<BigInt> b_pow;
  b_pow.reserve(static_cast<std::size_t>(M) + 1);
  b_pow.emplace_back(1);
  for (int k = 1; k <= M; ++k) b_pow.push_back(k == 1 ? b : b_pow.back() * b);

  BernPolyBatch out{alpha, {}};
  out.values.reserve(static_cast<std::size_t>(M) + 1);
  std::vector<BigInt> pascal = {BigInt(1)};
  for (int r = 0; r <= M; ++r) {
    if (r > 0) {
      pascal.emplace_back(1);
      for (std::size_t k = pascal.size() - 2; k >= 1; --k) pascal[k] += pascal[k - 1];
    }
    BigInt h;
    bool started = false;
    for (int s = r; s >= 0; --s) {
      if (started) h *= a;
      const std::size_t k = static_cast<std::size_t>(r - s);
      const BigInt& n = common.numerators[k];
      if (n.is_zero()) continue;
      BigInt term = n;
      const BigInt& c = pascal[static_cast<std::size_t>(s)];
      if (c != 1) term *= c;
      if (k > 0) term *= b_pow[k];
      h += term;
      started = true;
    }
    const BigInt den = (r == 0) ? common.denominator : common.denominator * b_pow[static_cast<std::size_t>(r)];
    out.values.emplace_back(h, den);
  }
  return out;
}

}  // namespace qzeta
