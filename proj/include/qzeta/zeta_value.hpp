#pragma once

#include <string>
#include <string_view>

#include "qzeta/characters.hpp"
#include "qzeta/errors.hpp"
#include "qzeta/exact.hpp"

namespace qzeta {

/// Which formula produced a value.
enum class Method { eq1_naive, eq1_batch, eq2, eq3 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::eq1_naive: return "EQ1_NAIVE";
    case Method::eq1_batch: return "EQ1_BATCH";
    case Method::eq2: return "EQ2";
    case Method::eq3: return "EQ3";
  }
  return "?";
}

/// zeta_D(1 - 2m).
struct ZetaValue {
  Discriminant D;
  int m;
  BigRat value;
  Method method;
};

namespace detail {

// zeta_D(1-2m) never vanishes for a real quadratic field; a zero means a bug.
inline void check_nonzero(const ZetaValue& z) {
  if (z.value.is_zero())
    throw InternalInconsistency("zeta_" + std::to_string(z.D.value()) + "(" + std::to_string(1 - 2 * z.m) +
                                ") came out as 0 via " + std::string(to_string(z.method)));
}

}  // namespace detail

}  // namespace qzeta
