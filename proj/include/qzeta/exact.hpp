#pragma once

// Arbitrary-precision integers and rationals over GMP, plus the
// multiplication counter used to compare algorithms under different
// cost models.
//
// Every BigInt product made through operator* is reported to the counter
// installed on the current thread by a CountingScope (if any).  BigRat
// operations report the schoolbook integer products they stand for:
// n1*n2 and d1*d2 for a product, n1*d2, n2*d1 and d1*d2 for a sum.
// Products with a unit denominator are not reported.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "qzeta/errors.hpp"

namespace qzeta {

/// Accumulated multiplication cost under three models.
///
/// For a product of t-bit and t'-bit operands (t >= t'):
///   mults      += 1                           (constant-time model)
///   naive_cost += t * t'                      (schoolbook model)
///   fast_cost  += t * (1 + ceil(lg t'))^2     (quasi-linear proxy)
struct MulCounter {
  std::uint64_t mults = 0;
  std::uint64_t naive_cost = 0;
  std::uint64_t fast_cost = 0;

  void record(std::uint64_t bits_a, std::uint64_t bits_b) noexcept {
    const std::uint64_t hi = std::max(bits_a, bits_b);
    const std::uint64_t lo = std::min(bits_a, bits_b);
    ++mults;
    naive_cost += hi * lo;
    const std::uint64_t lg = ceil_lg(lo);
    fast_cost += hi * (1 + lg) * (1 + lg);
  }

  void reset() noexcept { *this = MulCounter{}; }

  MulCounter& operator+=(const MulCounter& o) noexcept {
    mults += o.mults;
    naive_cost += o.naive_cost;
    fast_cost += o.fast_cost;
    return *this;
  }
  friend MulCounter operator+(MulCounter a, const MulCounter& b) noexcept { return a += b; }
  friend bool operator==(const MulCounter&, const MulCounter&) = default;

  // ceil(log2(x)), with ceil_lg(0) = ceil_lg(1) = 0.
  static constexpr std::uint64_t ceil_lg(std::uint64_t x) noexcept {
    std::uint64_t r = 0;
    while ((std::uint64_t{1} << r) < x) ++r;
    return r;
  }
};

namespace detail {

inline MulCounter*& active_counter() noexcept {
  thread_local MulCounter* counter = nullptr;
  return counter;
}

inline std::uint64_t bit_length(const mpz_class& v) noexcept {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline void note_mul(const mpz_class& a, const mpz_class& b) noexcept {
  if (MulCounter* c = active_counter()) c->record(bit_length(a), bit_length(b));
}

}  // namespace detail

/// Routes every counted multiplication on this thread into `counter`
/// for the lifetime of the scope.  Scopes nest; the innermost wins.
class CountingScope {
 public:
  explicit CountingScope(MulCounter& counter) noexcept : previous_(detail::active_counter()) {
    detail::active_counter() = &counter;
  }
  ~CountingScope() { detail::active_counter() = previous_; }
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  MulCounter* previous_;
};

/// Suspends counting (e.g. while building shared precomputed tables).
class UncountedScope {
 public:
  UncountedScope() noexcept : previous_(detail::active_counter()) { detail::active_counter() = nullptr; }
  ~UncountedScope() { detail::active_counter() = previous_; }
  UncountedScope(const UncountedScope&) = delete;
  UncountedScope& operator=(const UncountedScope&) = delete;

 private:
  MulCounter* previous_;
};

class BigInt {
 public:
  BigInt() = default;
  template <std::signed_integral T>
  BigInt(T v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  template <std::unsigned_integral T>
    requires(!std::same_as<T, bool>)
  BigInt(T v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  /// Decimal, optional leading '-'.  Throws std::invalid_argument.
  static BigInt parse(std::string_view text) {
    std::string s(text);
    if (s.empty() || s == "-" || s.find_first_not_of("-0123456789") != std::string::npos ||
        s.find('-', 1) != std::string::npos)
      throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return BigInt(mpz_class(s, 10));
  }

  const mpz_class& mpz() const noexcept { return v_; }
  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_odd() const noexcept { return mpz_odd_p(v_.get_mpz_t()) != 0; }

  /// Bit length of |v|; zero has bit length 0.
  std::uint64_t bits() const noexcept { return detail::bit_length(v_); }

  bool fits_int64() const noexcept { return v_.fits_slong_p(); }
  bool fits_uint64() const noexcept { return v_.fits_ulong_p(); }
  long long to_int64() const { return v_.get_si(); }
  unsigned long long to_uint64() const { return v_.get_ui(); }

  std::string str() const { return v_.get_str(10); }

  BigInt abs() const {
    mpz_class r;
    mpz_abs(r.get_mpz_t(), v_.get_mpz_t());
    return BigInt(std::move(r));
  }

  BigInt operator-() const { return BigInt(mpz_class(-v_)); }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) {
    detail::note_mul(v_, o.v_);
    v_ *= o.v_;
    return *this;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    detail::note_mul(a.v_, b.v_);
    return BigInt(mpz_class(a.v_ * b.v_));
  }
  // Truncating division, as for built-in integers.
  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw DomainError("BigInt division by zero");
    return BigInt(mpz_class(a.v_ / b.v_));
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw DomainError("BigInt division by zero");
    return BigInt(mpz_class(a.v_ % b.v_));
  }

  friend bool operator==(const BigInt& a, const BigInt& b) noexcept { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) noexcept {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.v_; }

 private:
  mpz_class v_;
};

/// Product recorded into an explicit counter (and no other).
inline BigInt counted_mul(const BigInt& a, const BigInt& b, MulCounter& counter) {
  counter.record(a.bits(), b.bits());
  return BigInt(mpz_class(a.mpz() * b.mpz()));
}

/// base^exp by square-and-multiply; every product is counted.
inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt result(1);
  BigInt b = base;
  bool first = true;
  while (exp != 0) {
    if (exp & 1UL) {
      if (first) {
        result = b;
        first = false;
      } else {
        result *= b;
      }
    }
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return BigInt(std::move(g));
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return BigInt(std::move(l));
}

/// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) {
  if (n.sign() < 0) throw DomainError("isqrt of a negative number");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.mpz().get_mpz_t());
  return BigInt(std::move(r));
}

/// Exact rational, always in lowest terms with a positive denominator.
class BigRat {
 public:
  BigRat() = default;
  template <std::integral T>
    requires(!std::same_as<T, bool>)
  BigRat(T v) : v_(BigInt(v).mpz()) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& n) : v_(n.mpz()) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) throw DomainError("zero denominator");
    v_.get_num() = num.mpz();
    v_.get_den() = den.mpz();
    v_.canonicalize();
  }

  /// "num/den" or "num"; the result is reduced.  Throws std::invalid_argument
  /// on malformed text and DomainError on a zero denominator.
  static BigRat parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRat(BigInt::parse(text));
    return BigRat(BigInt::parse(text.substr(0, slash)), BigInt::parse(text.substr(slash + 1)));
  }

  BigInt num() const { return BigInt(mpz_class(v_.get_num())); }
  BigInt den() const { return BigInt(mpz_class(v_.get_den())); }
  const mpq_class& mpq() const noexcept { return v_; }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const noexcept { return cmp(v_.get_den(), 1) == 0; }

  std::string str() const {
    return is_integer() ? v_.get_num().get_str(10) : v_.get_num().get_str(10) + "/" + v_.get_den().get_str(10);
  }

  BigRat operator-() const { return from(mpq_class(-v_)); }

  friend BigRat operator+(const BigRat& a, const BigRat& b) {
    note_sum(a, b);
    return from(mpq_class(a.v_ + b.v_));
  }
  friend BigRat operator-(const BigRat& a, const BigRat& b) {
    note_sum(a, b);
    return from(mpq_class(a.v_ - b.v_));
  }
  friend BigRat operator*(const BigRat& a, const BigRat& b) {
    detail::note_mul(a.v_.get_num(), b.v_.get_num());
    if (!a.is_integer() && !b.is_integer()) detail::note_mul(a.v_.get_den(), b.v_.get_den());
    return from(mpq_class(a.v_ * b.v_));
  }
  friend BigRat operator/(const BigRat& a, const BigRat& b) {
    if (b.is_zero()) throw DomainError("BigRat division by zero");
    detail::note_mul(a.v_.get_num(), b.v_.get_den());
    detail::note_mul(a.v_.get_den(), b.v_.get_num());
    return from(mpq_class(a.v_ / b.v_));
  }

  BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
  BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
  BigRat& operator*=(const BigRat& o) { return *this = *this * o; }
  BigRat& operator/=(const BigRat& o) { return *this = *this / o; }

  friend bool operator==(const BigRat& a, const BigRat& b) noexcept { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) noexcept {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRat& v) { return os << v.str(); }

 private:
  static BigRat from(mpq_class v) {
    BigRat r;
    r.v_ = std::move(v);
    return r;
  }

  static void note_sum(const BigRat& a, const BigRat& b) noexcept {
    const bool ai = a.is_integer();
    const bool bi = b.is_integer();
    if (ai && bi) return;
    if (!bi) detail::note_mul(a.v_.get_num(), b.v_.get_den());
    if (!ai) detail::note_mul(b.v_.get_num(), a.v_.get_den());
    if (!ai && !bi) detail::note_mul(a.v_.get_den(), b.v_.get_den());
  }

  mpq_class v_;
};

/// p-adic valuation of a nonzero rational: the v with q = p^v * (a/b),
/// p not dividing a*b.  Returns nullopt for q = 0 (infinite valuation).
/// p must be prime; this is not checked.
inline std::optional<long> valuation_p(const BigRat& q, const BigInt& p) {
  if (q.is_zero()) return std::nullopt;
  mpz_class rest;
  const long up = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), q.mpq().get_num_mpz_t(), p.mpz().get_mpz_t()));
  const long down = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), q.mpq().get_den_mpz_t(), p.mpz().get_mpz_t()));
  return up - down;
}

}  // namespace qzeta
