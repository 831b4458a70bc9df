#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qzeta/errors.hpp"

namespace qzeta {

namespace detail {

inline bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace detail

/// True iff D is a positive fundamental discriminant: D > 1 and either
/// D = 1 (mod 4) squarefree, or D = 4d with d = 2, 3 (mod 4) squarefree.
inline bool is_fundamental(std::int64_t D) {
  if (D <= 1) return false;
  if (D % 4 == 1) return detail::is_squarefree(D);
  if (D % 4 != 0) return false;
  const std::int64_t d = D / 4;
  return (d % 4 == 2 || d % 4 == 3) && detail::is_squarefree(d);
}

/// A positive fundamental discriminant.
class Discriminant {
 public:
  static std::optional<Discriminant> try_make(std::int64_t D) {
    if (!is_fundamental(D)) return std::nullopt;
    return Discriminant(D);
  }
  static Discriminant make(std::int64_t D) {
    if (!is_fundamental(D)) throw DomainError(std::to_string(D) + " is not a fundamental discriminant");
    return Discriminant(D);
  }

  std::int64_t value() const noexcept { return value_; }

  friend bool operator==(const Discriminant&, const Discriminant&) = default;
  friend auto operator<=>(const Discriminant&, const Discriminant&) = default;

 private:
  explicit Discriminant(std::int64_t D) : value_(D) {}
  std::int64_t value_;
};

/// Kronecker symbol (a|n) for arbitrary integers a, n.
inline int kronecker(std::int64_t a, std::int64_t n) {
  // (a|2) for odd a, indexed by a mod 8.
  static constexpr std::array<int, 8> two = {0, 1, 0, -1, 0, -1, 0, 1};

  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;

  int v = 0;
  while (n % 2 == 0) {
    ++v;
    n /= 2;
  }
  int k = (v % 2 == 0) ? 1 : two[static_cast<std::size_t>(a & 7)];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }

  // n is now odd and positive: plain Jacobi symbol.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 != 0) k *= two[static_cast<std::size_t>(n & 7)];
    if ((a & n & 2) != 0) k = -k;
    const std::int64_t r = a;
    a = n % r;
    n = r;
  }
  return n == 1 ? k : 0;
}

/// chi_D(j) = (D|j).
inline int kronecker(const Discriminant& D, std::int64_t j) { return kronecker(D.value(), j); }

}  // namespace qzeta
