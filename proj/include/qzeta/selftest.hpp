#pragma once

// Cross-formula self-check: EQ1 (naive and batch), EQ2 and EQ3 must agree
// exactly on every fundamental D <= d_max and 2 <= 2m <= M.

#include <cstdint>
#include <optional>
#include <string>

#include "qzeta/bernoulli.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/modular_zeta.hpp"

namespace qzeta {

struct SelftestScope {
  std::int64_t d_max = 60;
  int M = 20;
};

struct SelftestOptions {
  // Perturb c_{4m,1} for the largest m before running (fault injection).
  bool corrupt_coefficients = false;
};

struct SelftestResult {
  bool passed = true;
  std::uint64_t checks = 0;
  std::int64_t fail_D = 0;
  int fail_m = 0;
  std::string message;
};

inline SelftestResult run_selftest(const SelftestScope& scope, const SelftestOptions& options = {}) {
  if (scope.d_max < 5) throw DomainError("selftest: no fundamental discriminant in [5, " + std::to_string(scope.d_max) + "]");
  if (scope.M < 2 || scope.M % 2 != 0) throw DomainError("selftest: M must be even and >= 2");

  const BernTable table = bernoulli_table(scope.M);
  ModularCoefficients coeffs(scope.M);
  if (options.corrupt_coefficients) {
    const int m = scope.M / 2;
    CoeffTable bad = coeffs.table(m);
    bad.c[1] += BigInt(1);
    coeffs.replace(m, std::move(bad));
  }

  SelftestResult result;
  for (std::int64_t d = 5; d <= scope.d_max; ++d) {
    const auto D = Discriminant::try_make(d);
    if (!D) continue;
    const auto naive = zeta_eq1_range(*D, scope.M, table, Eq1Variant::naive);
    const auto batch = zeta_eq1_range(*D, scope.M, table, Eq1Variant::batch);
    const auto eq2 = zeta_modular_range(*D, scope.M, coeffs, ModularFormula::eq2);
    const auto eq3 = zeta_modular_range(*D, scope.M, coeffs, ModularFormula::eq3, true);
    for (std::size_t i = 0; i < naive.size(); ++i) {
      ++result.checks;
      const BigRat& ref = naive[i].value;
      const char* which = nullptr;
      const BigRat* got = nullptr;
      if (batch[i].value != ref) which = "EQ1_BATCH", got = &batch[i].value;
      else if (eq2[i].value != ref) which = "EQ2", got = &eq2[i].value;
      else if (eq3[i].value != ref) which = "EQ3", got = &eq3[i].value;
      if (!which) continue;
      result.passed = false;
      result.fail_D = d;
      result.fail_m = naive[i].m;
      result.message = "D = " + std::to_string(d) + ", m = " + std::to_string(naive[i].m) + ": EQ1_NAIVE gives " +
                       ref.str() + ", " + which + " gives " + got->str();
      return result;
    }
  }
  return result;
}

}  // namespace qzeta
