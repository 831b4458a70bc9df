#pragma once

// Algorithm comparison: every method computes zeta_D(1-2m), 2 <= 2m <= M,
// under a fresh MulCounter.  Shared precomputation (Bernoulli table,
// modular coefficient tables) is built once per M, outside the counters.
// All methods must agree exactly before any record is produced.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/modular_zeta.hpp"

namespace qzeta {

enum class BenchMethod { eq1_naive, eq1_batch, eq2, eq3, eq3_cached };

inline constexpr BenchMethod all_bench_methods[] = {BenchMethod::eq1_naive, BenchMethod::eq1_batch, BenchMethod::eq2,
                                                    BenchMethod::eq3, BenchMethod::eq3_cached};

inline std::string_view to_string(BenchMethod m) {
  switch (m) {
    case BenchMethod::eq1_naive: return "eq1-naive";
    case BenchMethod::eq1_batch: return "eq1-batch";
    case BenchMethod::eq2: return "eq2";
    case BenchMethod::eq3: return "eq3";
    case BenchMethod::eq3_cached: return "eq3-cached";
  }
  return "?";
}

inline std::optional<BenchMethod> parse_bench_method(std::string_view s) {
  for (BenchMethod m : all_bench_methods)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct BenchRecord {
  BenchMethod method;
  std::int64_t D;
  int M;
  double wall_ms;
  std::uint64_t mult_count;
  std::uint64_t cost_naive;
  std::uint64_t cost_fast;
};

/// Discriminants x bounds.  Text form: "D1,D2,...;M1,M2,...".
struct BenchGrid {
  std::vector<std::int64_t> discriminants;
  std::vector<int> bounds;

  static BenchGrid parse(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw std::invalid_argument("grid must look like \"D1,D2;M1,M2\"");
    BenchGrid g;
    auto split = [](std::string_view part, auto&& push) {
      std::string item;
      std::istringstream in{std::string(part)};
      while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
          v = std::stoll(item, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("bad grid entry '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("bad grid entry '" + item + "'");
        push(v);
      }
    };
    split(text.substr(0, semi), [&](long long v) { g.discriminants.push_back(v); });
    split(text.substr(semi + 1), [&](long long v) { g.bounds.push_back(static_cast<int>(v)); });
    if (g.discriminants.empty() || g.bounds.empty()) throw std::invalid_argument("grid is empty");
    return g;
  }
};

/// Values of one method for one (D, M), with its cost.
struct MethodRun {
  std::vector<ZetaValue> values;
  MulCounter counter;
  double wall_ms = 0;
};

inline MethodRun run_method(BenchMethod method, const Discriminant& D, int M, const BernTable& table,
                            ModularCoefficients& coeffs) {
  MethodRun run;
  const auto start = std::chrono::steady_clock::now();
  {
    CountingScope scope(run.counter);
    switch (method) {
      case BenchMethod::eq1_naive: run.values = zeta_eq1_range(D, M, table, Eq1Variant::naive); break;
      case BenchMethod::eq1_batch: run.values = zeta_eq1_range(D, M, table, Eq1Variant::batch); break;
      case BenchMethod::eq2: run.values = zeta_modular_range(D, M, coeffs, ModularFormula::eq2); break;
      case BenchMethod::eq3: run.values = zeta_modular_range(D, M, coeffs, ModularFormula::eq3); break;
      case BenchMethod::eq3_cached:
        run.values = zeta_modular_range(D, M, coeffs, ModularFormula::eq3, true);
        break;
    }
  }
  run.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

/// Test hook: runs on each freshly built coefficient source before timing.
using CoefficientTamper = std::function<void(ModularCoefficients&)>;

/// One record per (D, M, method), in grid order.  Throws DomainError for a
/// bad grid cell and OracleViolation when two methods disagree.
inline std::vector<BenchRecord> run_bench(const BenchGrid& grid, const std::vector<BenchMethod>& methods,
                                          const CoefficientTamper& tamper = {}) {
  if (methods.empty()) throw DomainError("no methods selected");
  std::vector<BenchRecord> out;
  for (int M : grid.bounds) {
    if (M < 2 || M % 2 != 0) throw DomainError("bound M must be even and >= 2, got " + std::to_string(M));
    BernTable table;
    std::optional<ModularCoefficients> coeffs;
    {
      UncountedScope precompute;
      table = bernoulli_table(M);
      coeffs.emplace(M);
      for (int m = 1; m <= M / 2; ++m) coeffs->table(m);
      if (tamper) tamper(*coeffs);
    }
    for (std::int64_t d : grid.discriminants) {
      const Discriminant D = Discriminant::make(d);
      std::vector<MethodRun> runs;
      for (BenchMethod method : methods) runs.push_back(run_method(method, D, M, table, *coeffs));
      for (std::size_t i = 1; i < runs.size(); ++i) {
        for (std::size_t k = 0; k < runs[0].values.size(); ++k) {
          if (runs[i].values[k].value == runs[0].values[k].value) continue;
          const int m = runs[0].values[k].m;
          throw OracleViolation(d, m,
                                "oracle violation at D = " + std::to_string(d) + ", m = " + std::to_string(m) + ": " +
                                    std::string(to_string(methods[0])) + " gives " + runs[0].values[k].value.str() +
                                    ", " + std::string(to_string(methods[i])) + " gives " +
                                    runs[i].values[k].value.str());
        }
      }
      for (std::size_t i = 0; i < runs.size(); ++i)
        out.push_back(BenchRecord{methods[i], d, M, runs[i].wall_ms, runs[i].counter.mults,
                                  runs[i].counter.naive_cost, runs[i].counter.fast_cost});
    }
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "method,D,M,wall_ms,mult_count,cost_naive,cost_fast\n";
  for (const auto& r : records) {
    std::ostringstream ms;
    ms.imbue(std::locale::classic());
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << r.wall_ms;
    os << to_string(r.method) << ',' << r.D << ',' << r.M << ',' << ms.str() << ',' << r.mult_count << ','
       << r.cost_naive << ',' << r.cost_fast << '\n';
  }
}

}  // namespace qzeta
