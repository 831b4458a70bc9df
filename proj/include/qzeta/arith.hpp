#pragma once

// Arithmetic functions for the modular formula:
//   sigma_k(n)  = sum_{d | n} d^k
//   e_k(n)      = sum_{x^2 = n (mod 4), |x| <= sqrt(n)} sigma_k((n - x^2) / 4)
//   s_l^D(2m)   = sum_{j | l} chi_D(j) j^{2m-1} e_{2m-1}((l/j)^2 D)

#include <atomic>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "qzeta/characters.hpp"
#include "qzeta/errors.hpp"
#include "qzeta/exact.hpp"

namespace qzeta {

/// (prime, exponent) pairs, primes strictly increasing.
using FactorMap = std::vector<std::pair<BigInt, unsigned>>;

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit n (these bases suffice below 2^64).
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
inline u64 rho_u64(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_u64(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  const u64 d = rho_u64(n);
  split_u64(d, out);
  split_u64(n / d, out);
}

// Same for numbers beyond 64 bits, on GMP; primality by mpz_probab_prime_p.
inline mpz_class rho_mpz(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, g = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    while (g == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (g != n) return g;
  }
}

inline void split_mpz(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    std::map<u64, unsigned> small;
    split_u64(n.get_ui(), small);
    for (const auto& [p, e] : small) out[mpz_class(p)] += e;
    return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    ++out[n];
    return;
  }
  const mpz_class d = rho_mpz(n);
  split_mpz(d, out);
  split_mpz(mpz_class(n / d), out);
}

}  // namespace detail

/// Factoring strategy.  Swap in another backend (e.g. ECM) through this.
class FactorBackend {
 public:
  virtual ~FactorBackend() = default;
  virtual FactorMap factor(const BigInt& n) const = 0;
};

/// Trial division by primes below 2^16, then Pollard rho on the cofactor.
class TrialRhoBackend final : public FactorBackend {
 public:
  FactorMap factor(const BigInt& n) const override {
    if (n.sign() <= 0) throw DomainError("factor: n must be >= 1, got " + n.str());
    UncountedScope factoring;
    FactorMap out;
    mpz_class rest = n.mpz();
    constexpr unsigned long trial_bound = 1UL << 16;
    for (unsigned long p = 2; p < trial_bound && p * p <= rest; p += (p == 2 ? 1 : 2)) {
      if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      out.emplace_back(BigInt(p), e);
    }
    if (rest != 1) {
      std::map<mpz_class, unsigned> big;
      detail::split_mpz(rest, big);
      for (const auto& [p, e] : big) out.emplace_back(BigInt(p), e);
    }
    return out;
  }
};

inline const FactorBackend& default_factor_backend() {
  static const TrialRhoBackend backend;
  return backend;
}

inline FactorMap factor(const BigInt& n, const FactorBackend& backend = default_factor_backend()) {
  return backend.factor(n);
}

inline bool is_prime(const BigInt& n) {
  if (n.sign() <= 0) return false;
  if (n.fits_uint64()) return detail::is_prime_u64(n.to_uint64());
  return mpz_probab_prime_p(n.mpz().get_mpz_t(), 40) != 0;
}

/// sigma from a factorization: prod_p (1 + p^k + ... + p^{ek}).
inline BigInt sigma_from_factors(unsigned k, const FactorMap& f) {
  BigInt result(1);
  bool first = true;
  for (const auto& [p, e] : f) {
    const BigInt pk = pow(p, k);
    BigInt term = BigInt(1) + pk;
    BigInt power = pk;
    for (unsigned i = 2; i <= e; ++i) {
      power *= pk;
      term += power;
    }
    if (first) {
      result = term;
      first = false;
    } else {
      result *= term;
    }
  }
  return result;
}

/// Memo of sigma_k(n) for one exponent k.  Flushed when k changes.
/// Optional capacity bound; when full, the largest n is evicted first.
/// Readers share a lock, writers take it exclusively.
class SigmaCache {
 public:
  explicit SigmaCache(unsigned exponent, std::size_t capacity = 0) : exponent_(exponent), capacity_(capacity) {}

  unsigned exponent() const noexcept { return exponent_; }
  std::size_t capacity() const noexcept { return capacity_; }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
  }
  std::uint64_t hits() const noexcept { return hits_.load(); }
  std::uint64_t misses() const noexcept { return misses_.load(); }

  /// Empties the cache, zeroes the counters and switches exponent.
  void reset(unsigned exponent) {
    std::unique_lock lock(mutex_);
    values_.clear();
    exponent_ = exponent;
    hits_ = 0;
    misses_ = 0;
  }

  /// Cached sigma(n) or compute(); counts one hit or one miss.  A value
  /// computed concurrently by two threads is stored once and counted as
  /// one miss and one hit.
  template <typename Compute>
  BigInt get_or_compute(const BigInt& n, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(n); it != values_.end()) {
        ++hits_;
        return it->second;
      }
    }
    BigInt value = compute();
    std::unique_lock lock(mutex_);
    auto [it, inserted] = values_.try_emplace(n, value);
    if (!inserted) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    if (capacity_ != 0 && values_.size() > capacity_) values_.erase(std::prev(values_.end()));
    return value;
  }

 private:
  unsigned exponent_;
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::map<BigInt, BigInt> values_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

/// Call counts for the e/s/sigma layer.
struct ArithStats {
  std::uint64_t e_calls = 0;
  std::uint64_t sigma_calls = 0;

  ArithStats& operator+=(const ArithStats& o) noexcept {
    e_calls += o.e_calls;
    sigma_calls += o.sigma_calls;
    return *this;
  }
};

/// sigma_k(n), consulting `cache` first when given.
inline BigInt sigma(unsigned k, const BigInt& n, SigmaCache* cache = nullptr, ArithStats* stats = nullptr) {
  if (n.sign() <= 0) throw DomainError("sigma: n must be >= 1, got " + n.str());
  if (stats) ++stats->sigma_calls;
  auto compute = [&] { return sigma_from_factors(k, factor(n)); };
  if (!cache) return compute();
  if (cache->exponent() != k)
    throw std::invalid_argument("sigma: cache holds exponent " + std::to_string(cache->exponent()) +
                                ", asked for " + std::to_string(k));
  return cache->get_or_compute(n, compute);
}

/// e_k(n).  x runs over integers of the parity of n from 0 to floor(sqrt n);
/// nonzero x stand for both signs.
inline BigInt e_function(unsigned k, const BigInt& n, SigmaCache* cache = nullptr, ArithStats* stats = nullptr) {
  if (n.sign() <= 0) throw DomainError("e_function: n must be >= 1, got " + n.str());
  if (stats) ++stats->e_calls;
  const long n_mod4 = (n % BigInt(4)).to_int64();
  if (n_mod4 == 2 || n_mod4 == 3) return BigInt();
  const BigInt root = isqrt(n);
  BigInt total;
  for (BigInt x(n_mod4); x <= root; x += BigInt(2)) {
    const BigInt x2(mpz_class(x.mpz() * x.mpz()));  // uncounted: x is word-sized
    if (x2 == n) throw DomainError("e_function: n = " + n.str() + " is a square, sigma(0) undefined");
    const BigInt arg(mpz_class((n.mpz() - x2.mpz()) / 4));
    const BigInt s = sigma(k, arg, cache, stats);
    total += x.is_zero() ? s : s + s;
  }
  return total;
}

/// s_l^D(2m).
inline BigInt s_function(long l, const Discriminant& D, int m, SigmaCache* cache = nullptr,
                         ArithStats* stats = nullptr) {
  if (l < 1) throw DomainError("s_function: l must be >= 1");
  const auto k = static_cast<unsigned>(2 * m - 1);
  BigInt total;
  for (long j = 1; j <= l; ++j) {
    if (l % j != 0) continue;
    const int chi = kronecker(D, j);
    if (chi == 0) continue;
    const long q = l / j;
    const BigInt e = e_function(k, BigInt(q * q) * BigInt(D.value()), cache, stats);
    BigInt term = j == 1 ? e : pow(BigInt(j), k) * e;
    chi > 0 ? total += term : total -= term;
  }
  return total;
}

}  // namespace qzeta
