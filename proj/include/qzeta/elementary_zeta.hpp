#pragma once

// zeta_D(1-2m) = B_{2m} / (4 m^2) * D^{2m-1} * sum_{j=1}^{D} chi_D(j) B_{2m}(j/D)

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/characters.hpp"
#include "qzeta/zeta_value.hpp"

namespace qzeta {

enum class Eq1Variant { naive, batch };

/// chi_D(j) * B_{2m}(j/D), one term of the character sum (naive evaluator).
inline BigRat eq1_term(const Discriminant& D, std::int64_t j, int m, const BernTable& table) {
  const int chi = kronecker(D, j);
  if (chi == 0) return BigRat();
  const BigRat b = bern_poly_naive(2 * m, BigRat(BigInt(j), BigInt(D.value())), table);
  return chi > 0 ? b : -b;
}

namespace detail {

inline BigRat eq1_prefactor(const Discriminant& D, int m, const BernTable& table) {
  const BigInt four_m2 = BigInt(4) * BigInt(m) * BigInt(m);
  return table[2 * m] / BigRat(four_m2) * BigRat(pow(BigInt(D.value()), static_cast<unsigned long>(2 * m - 1)));
}

inline void check_eq1_args(const Discriminant& D, int M, const BernTable& table) {
  (void)D;
  if (M < 2 || M % 2 != 0) throw DomainError("need an even bound 2m >= 2, got " + std::to_string(M));
  table.check(M);
}

}  // namespace detail

/// Every zeta_D(1-2m) with 2 <= 2m <= M.  In the batch variant each j
/// contributes through a single bern_poly_batch call covering all m.
inline std::vector<ZetaValue> zeta_eq1_range(const Discriminant& D, int M, const BernTable& table,
                                             Eq1Variant variant) {
  detail::check_eq1_args(D, M, table);
  const int count = M / 2;
  std::vector<BigRat> sums(static_cast<std::size_t>(count));
  const std::int64_t d = D.value();
  for (std::int64_t j = 1; j <= d; ++j) {
    const int chi = kronecker(D, j);
    if (chi == 0) continue;
    const BigRat alpha{BigInt(j), BigInt(d)};
    if (variant == Eq1Variant::batch) {
      const BernPolyBatch batch = bern_poly_batch(M, alpha, table);
      for (int m = 1; m <= count; ++m) {
        const BigRat& v = batch.values[static_cast<std::size_t>(2 * m)];
        auto& s = sums[static_cast<std::size_t>(m - 1)];
        s = chi > 0 ? s + v : s - v;
      }
    } else {
      for (int m = 1; m <= count; ++m) {
        const BigRat v = bern_poly_naive(2 * m, alpha, table);
        auto& s = sums[static_cast<std::size_t>(m - 1)];
        s = chi > 0 ? s + v : s - v;
      }
    }
  }

  const Method method = variant == Eq1Variant::batch ? Method::eq1_batch : Method::eq1_naive;
  std::vector<ZetaValue> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int m = 1; m <= count; ++m) {
    ZetaValue z{D, m, detail::eq1_prefactor(D, m, table) * sums[static_cast<std::size_t>(m - 1)], method};
    detail::check_nonzero(z);
    out.push_back(std::move(z));
  }
  return out;
}

/// zeta_D(1-2m) for a single m.
inline ZetaValue zeta_eq1(const Discriminant& D, int m, const BernTable& table, Eq1Variant variant) {
  if (m < 1) throw DomainError("m must be >= 1");
  table.check(2 * m);
  const std::int64_t d = D.value();
  BigRat sum;
  for (std::int64_t j = 1; j <= d; ++j) {
    const int chi = kronecker(D, j);
    if (chi == 0) continue;
    const BigRat alpha{BigInt(j), BigInt(d)};
    const BigRat v = variant == Eq1Variant::batch
                         ? bern_poly_batch(2 * m, alpha, table).values.back()
                         : bern_poly_naive(2 * m, alpha, table);
    sum = chi > 0 ? sum + v : sum - v;
  }
  ZetaValue z{D, m, detail::eq1_prefactor(D, m, table) * sum,
              variant == Eq1Variant::batch ? Method::eq1_batch : Method::eq1_naive};
  detail::check_nonzero(z);
  return z;
}

}  // namespace qzeta
