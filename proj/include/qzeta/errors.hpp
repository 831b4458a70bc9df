#pragma once

#include <stdexcept>
#include <string>

namespace qzeta {

// Requested index beyond a precomputed table (Bernoulli numbers).
class TableUnderflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A truncated series does not reach the exponent being asked for.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that cannot happen if the implementation is right.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Two algorithms disagreed on a zeta value.
class OracleViolation : public std::runtime_error {
 public:
  OracleViolation(long long D, int m, const std::string& what)
      : std::runtime_error(what), D_(D), m_(m) {}

  long long D() const noexcept { return D_; }
  int m() const noexcept { return m_; }

 private:
  long long D_;
  int m_;
};

}  // namespace qzeta
