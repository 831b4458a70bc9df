#pragma once

// Index of D-irregularity of an odd prime p.
//
// With delta = p - 1 (or (p - 1)/2 when D = p), p is D-regular when it is
// prime to zeta_D(1-2m) for 2 <= 2m <= delta - 2 and to p * zeta_D(1-delta).
// "Prime to" is read as p-adic valuation exactly 0.  A positive valuation
// is a hit; a negative one (p in the denominator) is also counted as a hit
// and listed separately as an anomaly.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/modular_zeta.hpp"

namespace qzeta {

enum class Engine { eq1, eq3 };

inline std::string_view to_string(Engine e) { return e == Engine::eq1 ? "eq1" : "eq3"; }

struct IrregularityReport {
  std::int64_t p = 0;
  std::int64_t D = 0;
  int delta = 0;
  int index = 0;
  std::vector<int> hits;       // 2m slots not prime to p
  std::vector<int> anomalies;  // subset of hits with negative valuation
  std::vector<std::string> warnings;
  bool condition_ok = false;   // p does not divide D
  Engine engine = Engine::eq1;

  friend bool operator==(const IrregularityReport&, const IrregularityReport&) = default;
};

/// delta = [Q(sqrt D, zeta_p) : Q(sqrt D)].
inline int irregularity_delta(std::int64_t p, const Discriminant& D) {
  return static_cast<int>(D.value() == p ? (p - 1) / 2 : p - 1);
}

/// Builds the report from zeta_D(1-2m), 2 <= 2m <= delta, in order of m.
inline IrregularityReport classify(std::int64_t p, const Discriminant& D, Engine engine,
                                   const std::vector<ZetaValue>& values) {
  IrregularityReport report;
  report.p = p;
  report.D = D.value();
  report.engine = engine;
  report.condition_ok = D.value() % p != 0;
  report.delta = irregularity_delta(p, D);
  if (report.delta % 2 != 0)
    throw InternalInconsistency("odd delta " + std::to_string(report.delta) + " for p = " + std::to_string(p));
  if (static_cast<int>(values.size()) != report.delta / 2)
    throw DomainError("expected " + std::to_string(report.delta / 2) + " zeta values, got " +
                      std::to_string(values.size()));

  const BigInt prime(p);
  for (const ZetaValue& z : values) {
    const int two_m = 2 * z.m;
    const BigRat tested = two_m == report.delta ? BigRat(prime) * z.value : z.value;
    const auto v = valuation_p(tested, prime);
    if (!v) throw InternalInconsistency("zero zeta value at 2m = " + std::to_string(two_m));
    if (*v == 0) continue;
    report.hits.push_back(two_m);
    if (*v < 0) {
      report.anomalies.push_back(two_m);
      report.warnings.push_back("2m = " + std::to_string(two_m) + ": " + std::to_string(p) +
                                " divides the denominator (valuation " + std::to_string(*v) + ")");
    }
  }
  report.index = static_cast<int>(report.hits.size());
  return report;
}

inline IrregularityReport irregularity_index(std::int64_t p, const Discriminant& D, Engine engine) {
  if (p < 3 || p % 2 == 0 || !is_prime(BigInt(p)))
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
  const int M = irregularity_delta(p, D);
  if (M % 2 != 0) throw InternalInconsistency("odd delta " + std::to_string(M) + " for p = " + std::to_string(p));

  std::vector<ZetaValue> values;
  if (engine == Engine::eq1) {
    values = zeta_eq1_range(D, M, bernoulli_table(M), Eq1Variant::batch);
  } else {
    ModularCoefficients coeffs(M);
    values = zeta_modular_range(D, M, coeffs, ModularFormula::eq3, true);
  }
  return classify(p, D, engine, values);
}

}  // namespace qzeta
