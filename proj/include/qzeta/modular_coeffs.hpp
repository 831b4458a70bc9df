#pragma once

// The integers c_{4m,l}: with r = floor(m/3) + 1,
//   T_{4m} = G_{12r-4m+2} * Delta^{-r} = sum_{n >= -r} c_{4m,-n} q^n,
// so c_{4m,l} is the coefficient of q^{-l}, 0 <= l <= r.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/errors.hpp"
#include "qzeta/series.hpp"

namespace qzeta {

constexpr int r_for(int m) noexcept { return m / 3 + 1; }
constexpr int weight_for(int m) noexcept { return 12 * r_for(m) - 4 * m + 2; }

/// Coefficients needed when every m <= M/2 is wanted.
constexpr int r_max_for(int M) noexcept { return M / 6 + 1; }

/// c_{4m,0} .. c_{4m,r} for one m.
struct CoeffTable {
  int m = 0;
  int r = 0;
  std::vector<BigInt> c;

  /// c_{4m} = c_{4m,0}.
  const BigInt& leading() const { return c.at(0); }
  const BigInt& operator[](int l) const { return c.at(static_cast<std::size_t>(l)); }
};

/// Delta^{-r} maintained as a running product, only ever advanced.
class DeltaPowerAccumulator {
 public:
  explicit DeltaPowerAccumulator(IntSeries delta_inv)
      : base_(std::move(delta_inv)), current_(0, std::vector<BigInt>(static_cast<std::size_t>(base_.trunc()) + 2)) {
    if (base_.lead() != -1) throw DomainError("accumulator needs Delta^{-1} with lead exponent -1");
    current_.at(0) = 1;
  }

  int power() const noexcept { return power_; }
  const IntSeries& series() const noexcept { return current_; }

  /// Multiplies in Delta^{-1} until the power is r.
  void advance_to(int r) {
    if (r < power_)
      throw DomainError("accumulator already at Delta^-" + std::to_string(power_) + ", cannot go back to " +
                        std::to_string(r));
    for (; power_ < r; ++power_) current_ = series_mul(current_, base_);
  }

 private:
  IntSeries base_;
  IntSeries current_;
  int power_ = 0;
};

/// G_6, G_10, G_14 and Delta^{-1}, all through q^{window}.
struct ModularBase {
  long window = 0;
  IntSeries g6, g10, g14, delta_inv;

  const IntSeries& eisenstein_for(int weight) const {
    switch (weight) {
      case 6: return g6;
      case 10: return g10;
      case 14: return g14;
      default: throw DomainError("unsupported Eisenstein weight " + std::to_string(weight));
    }
  }
};

inline ModularBase make_modular_base(long window) {
  const BernTable table = bernoulli_table(14);
  return ModularBase{window, eisenstein(6, window, table), eisenstein(10, window, table),
                     eisenstein(14, window, table), delta_inverse(window)};
}

/// Reads c_{4m,l} off T_{4m}, first advancing the accumulator to Delta^{-r}.
inline CoeffTable coeff_table(int m, DeltaPowerAccumulator& acc, const ModularBase& base) {
  if (m < 1) throw DomainError("coeff_table: m must be >= 1");
  const int r = r_for(m);
  acc.advance_to(r);
  const IntSeries& g = base.eisenstein_for(weight_for(m));
  const long known = std::min(g.trunc() + acc.series().lead(), acc.series().trunc() + g.lead());
  if (known < 0)
    throw WindowError("window " + std::to_string(base.window) + " too small for m = " + std::to_string(m) +
                      " (r = " + std::to_string(r) + ")");
  const IntSeries t = series_mul(g, acc.series(), 0L);

  CoeffTable ct{m, r, {}};
  ct.c.reserve(static_cast<std::size_t>(r) + 1);
  for (int l = 0; l <= r; ++l) ct.c.push_back(t.coeff(-l));
  if (ct.c.back() != 1) throw InternalInconsistency("c_{4m,r} != 1 for m = " + std::to_string(m));
  if (ct.c.front().is_zero()) throw InternalInconsistency("c_{4m} = 0 for m = " + std::to_string(m));
  return ct;
}

/// Coefficient tables for every m <= M/2, built in order of m from one
/// set of base series and one running Delta^{-r} product.
class ModularCoefficients {
 public:
  explicit ModularCoefficients(int M)
      : max_m_(M / 2), base_(make_modular_base(r_max_for(M))), acc_(base_.delta_inv) {
    if (M < 2) throw DomainError("ModularCoefficients: need M >= 2");
  }

  int max_m() const noexcept { return max_m_; }
  const ModularBase& base() const noexcept { return base_; }

  const CoeffTable& table(int m) {
    if (m < 1 || m > max_m_)
      throw WindowError("m = " + std::to_string(m) + " outside 1.." + std::to_string(max_m_));
    while (static_cast<int>(tables_.size()) < m)
      tables_.push_back(coeff_table(static_cast<int>(tables_.size()) + 1, acc_, base_));
    return tables_[static_cast<std::size_t>(m - 1)];
  }

  /// Fault injection for self-tests: overwrite a computed table.
  void replace(int m, CoeffTable ct) {
    table(m);
    tables_[static_cast<std::size_t>(m - 1)] = std::move(ct);
  }

 private:
  int max_m_;
  ModularBase base_;
  DeltaPowerAccumulator acc_;
  std::vector<CoeffTable> tables_;
};

/// "m l c_{4m,l}" lines.
inline void dump(std::ostream& os, const CoeffTable& ct) {
  for (int l = 0; l <= ct.r; ++l) os << ct.m << ' ' << l << ' ' << ct[l] << '\n';
}

}  // namespace qzeta
