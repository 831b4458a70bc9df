#include <gtest/gtest.h>

#include <sstream>

#include "qzeta/bench.hpp"

using qzeta::BenchGrid;
using qzeta::BenchMethod;

namespace {

std::uint64_t mults(const std::vector<qzeta::BenchRecord>& rs, BenchMethod method, std::int64_t D, int M) {
  for (const auto& r : rs)
    if (r.method == method && r.D == D && r.M == M) return r.mult_count;
  ADD_FAILURE() << "no record";
  return 0;
}

double ratio(const std::vector<qzeta::BenchRecord>& rs, std::int64_t D, int M) {
  return static_cast<double>(mults(rs, BenchMethod::eq3, D, M)) /
         static_cast<double>(mults(rs, BenchMethod::eq1_batch, D, M));
}

}  // namespace

TEST(BenchGrid, Parse) {
  const auto g = BenchGrid::parse("5,101;20,40");
  EXPECT_EQ(g.discriminants, (std::vector<std::int64_t>{5, 101}));
  EXPECT_EQ(g.bounds, (std::vector<int>{20, 40}));
  EXPECT_THROW(BenchGrid::parse("5,101"), std::invalid_argument);
  EXPECT_THROW(BenchGrid::parse(";20"), std::invalid_argument);
  EXPECT_THROW(BenchGrid::parse("5x;20"), std::invalid_argument);
}

TEST(BenchMethods, NamesRoundTrip) {
  for (BenchMethod m : qzeta::all_bench_methods) EXPECT_EQ(qzeta::parse_bench_method(qzeta::to_string(m)), m);
  EXPECT_FALSE(qzeta::parse_bench_method("eq4").has_value());
}

TEST(Bench, SingleCellGivesOneRecordPerMethod) {
  const std::vector<BenchMethod> all(std::begin(qzeta::all_bench_methods), std::end(qzeta::all_bench_methods));
  const auto rs = qzeta::run_bench(BenchGrid::parse("13;8"), all);
  ASSERT_EQ(rs.size(), all.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(rs[i].method, all[i]);
    EXPECT_EQ(rs[i].D, 13);
    EXPECT_EQ(rs[i].M, 8);
    EXPECT_GT(rs[i].mult_count, 0U);
    EXPECT_GE(rs[i].cost_naive, rs[i].mult_count);
    EXPECT_GE(rs[i].cost_fast, rs[i].mult_count);
  }
}

TEST(Bench, EqThreeGrowsSlowerInD) {
  const auto rs = qzeta::run_bench(BenchGrid::parse("5,101;20"), {BenchMethod::eq1_batch, BenchMethod::eq3});
  ASSERT_EQ(rs.size(), 4U);
  EXPECT_LT(ratio(rs, 101, 20), ratio(rs, 5, 20));
  const double eq1_growth = static_cast<double>(mults(rs, BenchMethod::eq1_batch, 101, 20)) /
                            static_cast<double>(mults(rs, BenchMethod::eq1_batch, 5, 20));
  const double eq3_growth = static_cast<double>(mults(rs, BenchMethod::eq3, 101, 20)) /
                            static_cast<double>(mults(rs, BenchMethod::eq3, 5, 20));
  EXPECT_LT(eq3_growth, eq1_growth);
}

TEST(Bench, BatchCountRoughlyQuadruplesWithM) {
  const auto rs = qzeta::run_bench(BenchGrid::parse("5;16,32,64"), {BenchMethod::eq1_batch});
  for (int M : {16, 32}) {
    const double r = static_cast<double>(mults(rs, BenchMethod::eq1_batch, 5, 2 * M)) /
                     static_cast<double>(mults(rs, BenchMethod::eq1_batch, 5, M));
    EXPECT_GE(r, 3.0) << M;
    EXPECT_LE(r, 6.0) << M;
  }
}

TEST(Bench, CachedEq3DoesNoMoreWork) {
  const auto rs = qzeta::run_bench(BenchGrid::parse("401;24"), {BenchMethod::eq3, BenchMethod::eq3_cached});
  EXPECT_LE(mults(rs, BenchMethod::eq3_cached, 401, 24), mults(rs, BenchMethod::eq3, 401, 24));
}

TEST(Bench, DisagreementIsAnOracleViolation) {
  const auto tamper = [](qzeta::ModularCoefficients& coeffs) {
    qzeta::CoeffTable bad = coeffs.table(2);
    bad.c[0] = bad.c[0] + qzeta::BigInt(1);
    coeffs.replace(2, std::move(bad));
  };
  try {
    qzeta::run_bench(BenchGrid::parse("5,8;6"), {BenchMethod::eq1_batch, BenchMethod::eq3}, tamper);
    FAIL() << "expected an oracle violation";
  } catch (const qzeta::OracleViolation& e) {
    EXPECT_EQ(e.D(), 5);
    EXPECT_EQ(e.m(), 2);
  }
}

TEST(Bench, BadGridCells) {
  EXPECT_THROW(qzeta::run_bench(BenchGrid::parse("9;8"), {BenchMethod::eq3}), qzeta::DomainError);
  EXPECT_THROW(qzeta::run_bench(BenchGrid::parse("5;7"), {BenchMethod::eq3}), qzeta::DomainError);
  EXPECT_THROW(qzeta::run_bench(BenchGrid::parse("5;8"), {}), qzeta::DomainError);
}

TEST(Bench, CsvSchema) {
  const std::vector<qzeta::BenchRecord> rs = {{BenchMethod::eq3_cached, 5, 20, 1.5, 10, 20, 30}};
  std::ostringstream os;
  qzeta::write_csv(os, rs);
  EXPECT_EQ(os.str(), "method,D,M,wall_ms,mult_count,cost_naive,cost_fast\neq3-cached,5,20,1.500,10,20,30\n");
}
