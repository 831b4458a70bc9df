#pragma once

// Command-line front end.  run_cli() is the whole program minus main(), so
// tests can drive it in-process.
//
// Exit codes: 0 success, 2 usage or domain error, 3 internal oracle violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qzeta/qzeta.hpp"

namespace qzeta::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_oracle = 3;

// Integers beyond 2^53 go out as decimal strings.
inline nlohmann::json json_integer(const BigInt& v) {
  static const BigInt limit = pow(BigInt(2), 53);
  if (v.abs() < limit) return v.to_int64();
  return v.str();
}

inline nlohmann::json to_json(const IrregularityReport& r) {
  return nlohmann::json{{"p", r.p},
                        {"D", r.D},
                        {"delta", r.delta},
                        {"index", r.index},
                        {"hits", r.hits},
                        {"anomalies", r.anomalies},
                        {"warnings", r.warnings},
                        {"condition_ok", r.condition_ok},
                        {"engine", std::string(to_string(r.engine))}};
}

namespace detail {

struct ZetaArgs {
  std::int64_t D = 0;
  int mmax = 0;
  std::string method = "eq1";
  std::string format = "csv";
};

struct SweepArgs {
  std::int64_t dmax = 0;
  int mmax = 0;
  bool cache = false;
  unsigned jobs = 1;
  std::string format = "csv";
};

struct IrregularArgs {
  std::int64_t p = 0;
  std::int64_t D = 0;
  std::string engine = "eq1";
};

struct BenchArgs {
  std::string grid;
  std::string methods = "eq1-naive,eq1-batch,eq2,eq3,eq3-cached";
  std::string emit = "csv";
};

struct SelftestArgs {
  std::int64_t dmax = 60;
  int mmax = 20;
  bool inject_fault = false;
};

inline std::vector<ZetaValue> compute(const ZetaArgs& a) {
  const Discriminant D = Discriminant::make(a.D);
  if (a.mmax < 2 || a.mmax % 2 != 0) throw DomainError("--mmax must be even and >= 2");
  if (a.method == "eq1" || a.method == "eq1-batch")
    return zeta_eq1_range(D, a.mmax, bernoulli_table(a.mmax), Eq1Variant::batch);
  if (a.method == "eq1-naive") return zeta_eq1_range(D, a.mmax, bernoulli_table(a.mmax), Eq1Variant::naive);
  ModularCoefficients coeffs(a.mmax);
  if (a.method == "eq2") return zeta_modular_range(D, a.mmax, coeffs, ModularFormula::eq2);
  return zeta_modular_range(D, a.mmax, coeffs, ModularFormula::eq3, true);
}

inline int cmd_zeta(const ZetaArgs& a, std::ostream& out) {
  const auto values = compute(a);
  if (a.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& z : values) rows.push_back({{"m", z.m}, {"zeta", z.value.str()}});
    out << nlohmann::json{{"D", a.D}, {"method", a.method}, {"values", rows}}.dump() << '\n';
  } else {
    out << "D,m,zeta\n";
    for (const auto& z : values) out << z.D.value() << ',' << z.m << ',' << z.value.str() << '\n';
  }
  return exit_ok;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepResult r = sweep(a.dmax, a.mmax, a.cache, a.jobs);
  std::uint64_t e_calls = 0;
  for (const auto& s : r.per_m) e_calls += s.e_calls;
  if (a.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, z] : r.values) rows.push_back({{"d", key.first}, {"m", key.second}, {"zeta", z.value.str()}});
    nlohmann::json per_m = nlohmann::json::array();
    for (const auto& s : r.per_m)
      per_m.push_back({{"m", s.m}, {"sigma_calls", s.sigma_calls}, {"e_calls", s.e_calls}, {"hits", s.hits},
                       {"misses", s.misses}});
    out << nlohmann::json{{"values", rows},
                          {"cache",
                           {{"enabled", a.cache},
                            {"hits", r.total_hits()},
                            {"misses", r.total_misses()},
                            {"sigma_calls", r.total_sigma_calls()},
                            {"e_calls", e_calls},
                            {"per_m", per_m}}}}
               .dump()
        << '\n';
  } else {
    out << "d,m,zeta\n";
    for (const auto& [key, z] : r.values) out << key.first << ',' << key.second << ',' << z.value.str() << '\n';
    out << "# cache " << (a.cache ? "on" : "off") << " hits=" << r.total_hits() << " misses=" << r.total_misses()
        << " sigma_calls=" << r.total_sigma_calls() << " e_calls=" << e_calls << '\n';
  }
  return exit_ok;
}

inline int cmd_irregular(const IrregularArgs& a, std::ostream& out, std::ostream& err) {
  if (a.p % 2 == 0) throw DomainError("p must be odd, got " + std::to_string(a.p));
  const Discriminant D = Discriminant::make(a.D);
  const Engine engine = a.engine == "eq3" ? Engine::eq3 : Engine::eq1;
  const IrregularityReport r = irregularity_index(a.p, D, engine);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  out << to_json(r).dump() << '\n';
  return exit_ok;
}

inline int cmd_coeffs(int mmax, std::ostream& out) {
  if (mmax < 2 || mmax % 2 != 0) throw DomainError("--mmax must be even and >= 2");
  ModularCoefficients coeffs(mmax);
  for (int m = 1; m <= mmax / 2; ++m) dump(out, coeffs.table(m));
  return exit_ok;
}

inline int cmd_bernoulli(int max_index, std::ostream& out) {
  if (max_index < 0) throw DomainError("--max must be >= 0");
  dump(out, bernoulli_table(max_index));
  return exit_ok;
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const BenchGrid grid = BenchGrid::parse(a.grid);
  std::vector<BenchMethod> methods;
  std::istringstream in(a.methods);
  for (std::string name; std::getline(in, name, ',');) {
    if (name.empty()) continue;
    const auto m = parse_bench_method(name);
    if (!m) throw DomainError("unknown method '" + name + "'");
    methods.push_back(*m);
  }
  const auto records = run_bench(grid, methods);
  if (a.emit == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records)
      rows.push_back({{"method", std::string(to_string(r.method))},
                      {"D", r.D},
                      {"M", r.M},
                      {"wall_ms", r.wall_ms},
                      {"mult_count", r.mult_count},
                      {"cost_naive", r.cost_naive},
                      {"cost_fast", r.cost_fast}});
    out << rows.dump() << '\n';
  } else {
    write_csv(out, records);
  }
  return exit_ok;
}

inline int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  const SelftestResult r = run_selftest(SelftestScope{a.dmax, a.mmax}, SelftestOptions{a.inject_fault});
  if (r.passed) {
    out << "PASS " << r.checks << " checks (D <= " << a.dmax << ", 2m <= " << a.mmax << ")\n";
    return exit_ok;
  }
  out << "FAIL at " << r.message << '\n';
  return exit_oracle;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact special values of real quadratic Dedekind zeta functions", "qzeta"};
  app.require_subcommand(1);

  detail::ZetaArgs zeta_args;
  auto* zeta = app.add_subcommand("zeta", "zeta_D(1-2m) for 2 <= 2m <= mmax");
  zeta->add_option("--D", zeta_args.D, "fundamental discriminant")->required();
  zeta->add_option("--mmax", zeta_args.mmax, "even bound on 2m")->required();
  zeta->add_option("--method", zeta_args.method)
      ->check(CLI::IsMember({"eq1", "eq1-naive", "eq1-batch", "eq2", "eq3"}));
  zeta->add_option("--format", zeta_args.format)->check(CLI::IsMember({"csv", "json"}));

  detail::SweepArgs sweep_args;
  auto* sw = app.add_subcommand("sweep", "all fundamental 5 <= d <= dmax by the rearranged modular formula");
  sw->add_option("--dmax", sweep_args.dmax)->required();
  sw->add_option("--mmax", sweep_args.mmax)->required();
  sw->add_flag("--cache", sweep_args.cache, "memoize sigma values within each m");
  sw->add_option("--jobs", sweep_args.jobs, "worker threads for the d-loop")->check(CLI::PositiveNumber);
  sw->add_option("--format", sweep_args.format)->check(CLI::IsMember({"csv", "json"}));

  detail::IrregularArgs irr_args;
  auto* irr = app.add_subcommand("irregular", "index of D-irregularity of an odd prime p");
  irr->add_option("--p", irr_args.p)->required();
  irr->add_option("--D", irr_args.D)->required();
  irr->add_option("--engine", irr_args.engine)->check(CLI::IsMember({"eq1", "eq3"}));

  int coeffs_mmax = 0;
  auto* co = app.add_subcommand("coeffs", "dump c_{4m,l} as 'm l c' lines");
  co->add_option("--mmax", coeffs_mmax)->required();

  int bern_max = 0;
  auto* be = app.add_subcommand("bernoulli", "dump B_0..B_max as 'index value' lines");
  be->add_option("--max", bern_max)->required();

  detail::BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "compare algorithms by multiplication counts");
  bench->add_option("--grid", bench_args.grid, "\"D1,D2,...;M1,M2,...\"")->required();
  bench->add_option("--methods", bench_args.methods, "comma-separated subset of eq1-naive,eq1-batch,eq2,eq3,eq3-cached");
  bench->add_option("--emit", bench_args.emit)->check(CLI::IsMember({"csv", "json"}));

  detail::SelftestArgs st_args;
  auto* st = app.add_subcommand("selftest", "cross-check all formulas");
  st->add_option("--dmax", st_args.dmax);
  st->add_option("--mmax", st_args.mmax);
  st->add_flag("--inject-fault", st_args.inject_fault, "corrupt one coefficient table first");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*zeta) return detail::cmd_zeta(zeta_args, out);
    if (*sw) return detail::cmd_sweep(sweep_args, out);
    if (*irr) return detail::cmd_irregular(irr_args, out, err);
    if (*co) return detail::cmd_coeffs(coeffs_mmax, out);
    if (*be) return detail::cmd_bernoulli(bern_max, out);
    if (*bench) return detail::cmd_bench(bench_args, out);
    if (*st) return detail::cmd_selftest(st_args, out);
  } catch (const OracleViolation& e) {
    err << "error: " << e.what() << '\n';
    return exit_oracle;
  } catch (const InternalInconsistency& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_oracle;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace qzeta::cli
