#pragma once

// zeta_D(1-2m) from the modular-form coefficients:
//   as written:  -4 / c_{4m} * sum_{l=1}^{r} c_{4m,l} s_l^D(2m)
//   rearranged:  -4 / c_{4m} * sum_{k=1}^{r} (sum_{j=1}^{r/k} chi_D(j) j^{2m-1} c_{4m,jk}) e_{2m-1}(k^2 D)
// Everything up to the final division by c_{4m} is integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "qzeta/arith.hpp"
#include "qzeta/characters.hpp"
#include "qzeta/modular_coeffs.hpp"
#include "qzeta/zeta_value.hpp"

namespace qzeta {

namespace detail {

inline void check_table(const CoeffTable& ct, int m) {
  if (ct.m != m) throw DomainError("coefficient table is for m = " + std::to_string(ct.m) + ", not " + std::to_string(m));
  if (ct.leading().is_zero()) throw InternalInconsistency("c_{4m} = 0 for m = " + std::to_string(m));
}

inline ZetaValue finish(const Discriminant& D, int m, const BigInt& weighted_sum, const CoeffTable& ct, Method how) {
  ZetaValue z{D, m, BigRat(BigInt(-4) * weighted_sum, ct.leading()), how};
  check_nonzero(z);
  return z;
}

}  // namespace detail

/// sum_{l=1}^{r} c_{4m,l} s_l^D(2m): the integer that -4/c_{4m} scales.
inline BigInt eq2_weighted_sum(const Discriminant& D, int m, const CoeffTable& ct, SigmaCache* cache = nullptr,
                               ArithStats* stats = nullptr) {
  detail::check_table(ct, m);
  BigInt total;
  for (int l = 1; l <= ct.r; ++l) {
    if (ct[l].is_zero()) continue;
    total += ct[l] * s_function(l, D, m, cache, stats);
  }
  return total;
}

/// The inner integers w_k = sum_{j <= r/k} chi_D(j) j^{2m-1} c_{4m,jk}, k = 1..r.
inline std::vector<BigInt> eq3_inner_weights(const Discriminant& D, int m, const CoeffTable& ct) {
  detail::check_table(ct, m);
  const auto k_exp = static_cast<unsigned long>(2 * m - 1);
  std::vector<BigInt> w(static_cast<std::size_t>(ct.r));
  for (int k = 1; k <= ct.r; ++k) {
    BigInt inner;
    for (int j = 1; j <= ct.r / k; ++j) {
      const int chi = kronecker(D, j);
      const BigInt& c = ct[j * k];
      if (chi == 0 || c.is_zero()) continue;
      BigInt term = j == 1 ? c : pow(BigInt(j), k_exp) * c;
      chi > 0 ? inner += term : inner -= term;
    }
    w[static_cast<std::size_t>(k - 1)] = std::move(inner);
  }
  return w;
}

/// sum_{k=1}^{r} w_k e_{2m-1}(k^2 D).  Makes exactly r e_function calls.
inline BigInt eq3_weighted_sum(const Discriminant& D, int m, const CoeffTable& ct, SigmaCache* cache = nullptr,
                               ArithStats* stats = nullptr) {
  const std::vector<BigInt> w = eq3_inner_weights(D, m, ct);
  const auto k_exp = static_cast<unsigned>(2 * m - 1);
  BigInt total;
  for (int k = 1; k <= ct.r; ++k) {
    const BigInt e = e_function(k_exp, BigInt(static_cast<long>(k) * k) * BigInt(D.value()), cache, stats);
    const BigInt& wk = w[static_cast<std::size_t>(k - 1)];
    if (!wk.is_zero()) total += wk * e;
  }
  return total;
}

inline ZetaValue zeta_eq2(const Discriminant& D, int m, const CoeffTable& ct, SigmaCache* cache = nullptr,
                          ArithStats* stats = nullptr) {
  return detail::finish(D, m, eq2_weighted_sum(D, m, ct, cache, stats), ct, Method::eq2);
}

inline ZetaValue zeta_eq3(const Discriminant& D, int m, const CoeffTable& ct, SigmaCache* cache = nullptr,
                          ArithStats* stats = nullptr) {
  return detail::finish(D, m, eq3_weighted_sum(D, m, ct, cache, stats), ct, Method::eq3);
}

enum class ModularFormula { eq2, eq3 };

/// zeta_D(1-2m) for 2 <= 2m <= M through one of the modular formulas.
/// With use_cache, a sigma cache lives for each m and is dropped after it.
inline std::vector<ZetaValue> zeta_modular_range(const Discriminant& D, int M, ModularCoefficients& coeffs,
                                                 ModularFormula formula, bool use_cache = false,
                                                 ArithStats* stats = nullptr) {
  if (M < 2 || M % 2 != 0) throw DomainError("need an even bound 2m >= 2, got " + std::to_string(M));
  std::vector<ZetaValue> out;
  SigmaCache cache(1);
  for (int m = 1; m <= M / 2; ++m) {
    const CoeffTable& ct = coeffs.table(m);
    cache.reset(static_cast<unsigned>(2 * m - 1));
    SigmaCache* c = use_cache ? &cache : nullptr;
    out.push_back(formula == ModularFormula::eq2 ? zeta_eq2(D, m, ct, c, stats) : zeta_eq3(D, m, ct, c, stats));
  }
  return out;
}

/// Cache activity for one m of a sweep.
struct SweepStats {
  int m = 0;
  std::uint64_t sigma_calls = 0;
  std::uint64_t e_calls = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

struct SweepResult {
  std::map<std::pair<std::int64_t, int>, ZetaValue> values;  // (d, m) -> zeta_d(1-2m)
  std::vector<SweepStats> per_m;

  std::uint64_t total_hits() const {
    std::uint64_t t = 0;
    for (const auto& s : per_m) t += s.hits;
    return t;
  }
  std::uint64_t total_misses() const {
    std::uint64_t t = 0;
    for (const auto& s : per_m) t += s.misses;
    return t;
  }
  std::uint64_t total_sigma_calls() const {
    std::uint64_t t = 0;
    for (const auto& s : per_m) t += s.sigma_calls;
    return t;
  }
};

/// All zeta_d(1-2m), fundamental 5 <= d <= d_max, 2 <= 2m <= M, by the
/// rearranged formula.  m is the outer loop: the coefficient table and the
/// sigma cache change only when m does.  Non-fundamental d are skipped.
/// With jobs > 1 the d-loop for each m is split across threads sharing
/// the cache; results do not depend on jobs.
inline SweepResult sweep(std::int64_t d_max, int M, bool use_cache, unsigned jobs = 1) {
  if (d_max < 5) throw DomainError("sweep: empty discriminant range [5, " + std::to_string(d_max) + "]");
  if (M < 2 || M % 2 != 0) throw DomainError("sweep: need an even bound 2m >= 2, got " + std::to_string(M));
  jobs = std::max(1U, jobs);

  std::vector<Discriminant> ds;
  for (std::int64_t d = 5; d <= d_max; ++d)
    if (auto D = Discriminant::try_make(d)) ds.push_back(*D);

  ModularCoefficients coeffs(M);
  SweepResult result;
  SigmaCache cache(1);
  for (int m = 1; m <= M / 2; ++m) {
    const CoeffTable& ct = coeffs.table(m);
    cache.reset(static_cast<unsigned>(2 * m - 1));
    SigmaCache* c = use_cache ? &cache : nullptr;

    std::vector<std::vector<ZetaValue>> partial(jobs);
    std::vector<ArithStats> stats(jobs);
    std::vector<std::exception_ptr> failures(jobs);
    auto work = [&](unsigned w) {
      try {
        for (std::size_t i = w; i < ds.size(); i += jobs)
          partial[w].push_back(zeta_eq3(ds[i], m, ct, c, &stats[w]));
      } catch (...) {
        failures[w] = std::current_exception();
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    }
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);

    SweepStats s{m, 0, 0, cache.hits(), cache.misses()};
    for (unsigned w = 0; w < jobs; ++w) {
      s.sigma_calls += stats[w].sigma_calls;
      s.e_calls += stats[w].e_calls;
      for (auto& z : partial[w]) result.values.emplace(std::pair{z.D.value(), z.m}, std::move(z));
    }
    result.per_m.push_back(s);
  }
  return result;
}

}  // namespace qzeta
