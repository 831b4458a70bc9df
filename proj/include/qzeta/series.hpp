#pragma once

// Truncated q-series with integer coefficients and the handful of modular
// forms needed for the coefficient tables: Eisenstein series G_6, G_10,
// G_14, the discriminant Delta and its inverse.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/errors.hpp"
#include "qzeta/exact.hpp"

namespace qzeta {

/// sum_{i} coeffs[i] q^{lead + i}, known exactly up to q^{trunc}.
class IntSeries {
 public:
  IntSeries(long lead, std::vector<BigInt> coeffs) : lead_(lead), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw WindowError("empty series window");
  }

  long lead() const noexcept { return lead_; }
  long trunc() const noexcept { return lead_ + static_cast<long>(coeffs_.size()) - 1; }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of q^e; zero below the lead exponent.
  BigInt coeff(long e) const {
    if (e > trunc())
      throw WindowError("exponent " + std::to_string(e) + " beyond truncation " + std::to_string(trunc()));
    if (e < lead_) return BigInt();
    return coeffs_[static_cast<std::size_t>(e - lead_)];
  }

  BigInt& at(long e) {
    if (e < lead_ || e > trunc()) throw WindowError("exponent " + std::to_string(e) + " outside window");
    return coeffs_[static_cast<std::size_t>(e - lead_)];
  }

  IntSeries truncated(long new_trunc) const {
    if (new_trunc >= trunc()) return *this;
    if (new_trunc < lead_) throw WindowError("truncation below lead exponent");
    return IntSeries(lead_, std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + (new_trunc - lead_ + 1)));
  }

  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  long lead_;
  std::vector<BigInt> coeffs_;
};

/// Pluggable multiplication backend; the default is schoolbook convolution.
using SeriesMulBackend = std::function<std::vector<BigInt>(std::span<const BigInt>, std::span<const BigInt>,
                                                           std::size_t out_len)>;

namespace detail {

inline std::vector<BigInt> convolve(std::span<const BigInt> a, std::span<const BigInt> b, std::size_t out_len) {
  std::vector<BigInt> out(out_len);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace detail

/// Product of two truncated series.  a is known through a.trunc() and
/// b through b.trunc(), so the product is known through
///   min(a.trunc() + b.lead(), b.trunc() + a.lead()),
/// further capped at `cap` when given.
inline IntSeries series_mul(const IntSeries& a, const IntSeries& b, std::optional<long> cap = std::nullopt,
                            const SeriesMulBackend& backend = {}) {
  const long lead = a.lead() + b.lead();
  long trunc = std::min(a.trunc() + b.lead(), b.trunc() + a.lead());
  if (cap) trunc = std::min(trunc, *cap);
  if (trunc < lead)
    throw WindowError("series product has no known coefficients (lead " + std::to_string(lead) + ", trunc " +
                      std::to_string(trunc) + ")");
  const auto len = static_cast<std::size_t>(trunc - lead + 1);
  return IntSeries(lead, backend ? backend(a.coeffs(), b.coeffs(), len)
                                 : detail::convolve(a.coeffs(), b.coeffs(), len));
}

/// p(0) .. p(N) by Euler's pentagonal-number recurrence.
inline IntSeries partition_series(long N) {
  if (N < 0) throw DomainError("partition_series: N must be >= 0");
  std::vector<BigInt> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1;
  for (long n = 1; n <= N; ++n) {
    BigInt sum;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const bool plus = (k % 2) == 1;
      const BigInt& t1 = p[static_cast<std::size_t>(n - g1)];
      plus ? sum += t1 : sum -= t1;
      const long g2 = k * (3 * k + 1) / 2;
      if (g2 <= n) {
        const BigInt& t2 = p[static_cast<std::size_t>(n - g2)];
        plus ? sum += t2 : sum -= t2;
      }
    }
    p[static_cast<std::size_t>(n)] = sum;
  }
  return IntSeries(0, std::move(p));
}

/// Delta = q (sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2})^8 through q^N, N >= 1.
inline IntSeries delta_series(long N) {
  if (N < 1) throw DomainError("delta_series: N must be >= 1");
  const long inner_trunc = N - 1;
  std::vector<BigInt> theta(static_cast<std::size_t>(inner_trunc) + 1);
  for (long n = 0; n * (n + 1) / 2 <= inner_trunc; ++n)
    theta[static_cast<std::size_t>(n * (n + 1) / 2)] = (n % 2 == 0) ? BigInt(2 * n + 1) : BigInt(-(2 * n + 1));
  IntSeries s(0, std::move(theta));
  for (int i = 0; i < 3; ++i) s = series_mul(s, s);
  std::vector<BigInt> c(s.coeffs().begin(), s.coeffs().end());
  return IntSeries(1, std::move(c));
}

/// 1 / f for f with f.lead() = 0 and leading coefficient +-1, same window.
inline IntSeries series_inverse_unit(const IntSeries& f) {
  if (f.lead() != 0) throw DomainError("series_inverse_unit: lead exponent must be 0");
  const auto fc = f.coeffs();
  if (fc[0] != 1 && fc[0] != -1) throw DomainError("series_inverse_unit: constant term must be a unit");
  const bool neg = fc[0] == -1;
  std::vector<BigInt> inv(fc.size());
  inv[0] = fc[0];
  for (std::size_t n = 1; n < fc.size(); ++n) {
    BigInt sum;
    for (std::size_t i = 1; i <= n; ++i) {
      if (fc[i].is_zero() || inv[n - i].is_zero()) continue;
      sum += fc[i] * inv[n - i];
    }
    inv[n] = neg ? sum : -sum;
  }
  return IntSeries(0, std::move(inv));
}

/// Delta^{-1} = q^{-1} prod (1 - q^n)^{-24} through q^N (N >= -1), obtained
/// by inverting Delta / q term by term.
inline IntSeries delta_inverse(long N) {
  if (N < -1) throw DomainError("delta_inverse: N must be >= -1");
  // Delta/q through q^{N+1}, i.e. Delta through q^{N+2}.
  const IntSeries delta = delta_series(N + 2);
  std::vector<BigInt> shifted(delta.coeffs().begin(), delta.coeffs().end());
  const IntSeries inv = series_inverse_unit(IntSeries(0, std::move(shifted)));
  std::vector<BigInt> c(inv.coeffs().begin(), inv.coeffs().end());
  return IntSeries(-1, std::move(c));
}

/// True for the weights this engine carries Eisenstein series for.
constexpr bool supported_weight(int k) noexcept { return k == 6 || k == 10 || k == 14; }

/// G_k = 1 - (2k / B_k) sum_{n>=1} sigma_{k-1}(n) q^n through q^N.
inline IntSeries eisenstein(int k, long N, const BernTable& table) {
  if (!supported_weight(k)) throw DomainError("unsupported Eisenstein weight " + std::to_string(k));
  if (N < 0) throw DomainError("eisenstein: N must be >= 0");
  const BigRat factor = BigRat(BigInt(2 * k)) / table[k];
  if (!factor.is_integer()) throw InternalInconsistency("2k/B_k is not an integer for k = " + std::to_string(k));
  const BigInt scale = factor.num();

  // sigma_{k-1}(n) for n <= N by summing d^{k-1} over multiples of d.
  std::vector<BigInt> sig(static_cast<std::size_t>(N) + 1);
  for (long d = 1; d <= N; ++d) {
    const BigInt dp = pow(BigInt(d), static_cast<unsigned long>(k - 1));
    for (long n = d; n <= N; n += d) sig[static_cast<std::size_t>(n)] += dp;
  }
  std::vector<BigInt> c(static_cast<std::size_t>(N) + 1);
  c[0] = 1;
  for (long n = 1; n <= N; ++n) c[static_cast<std::size_t>(n)] = -(scale * sig[static_cast<std::size_t>(n)]);
  return IntSeries(0, std::move(c));
}

}  // namespace qzeta
