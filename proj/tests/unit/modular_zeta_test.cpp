#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/modular_zeta.hpp"

using qzeta::BigInt;
using qzeta::BigRat;
using qzeta::Discriminant;

namespace {

qzeta::ModularCoefficients& shared_coeffs() {
  static qzeta::ModularCoefficients coeffs(40);
  return coeffs;
}

const qzeta::BernTable& shared_table() {
  static const qzeta::BernTable table = qzeta::bernoulli_table(40);
  return table;
}

}  // namespace

TEST(ModularZeta, Eq2Examples) {
  const auto D = Discriminant::make(5);
  auto& coeffs = shared_coeffs();
  EXPECT_EQ(qzeta::zeta_eq2(D, 1, coeffs.table(1)).value, BigRat::parse("1/30"));
  EXPECT_EQ(qzeta::zeta_eq2(D, 2, coeffs.table(2)).value, BigRat::parse("1/60"));
  EXPECT_EQ(qzeta::zeta_eq2(D, 3, coeffs.table(3)).value, BigRat::parse("67/630"));
  EXPECT_EQ(qzeta::zeta_eq2(D, 3, coeffs.table(3)).method, qzeta::Method::eq2);
}

TEST(ModularZeta, Eq3Examples) {
  const auto D = Discriminant::make(5);
  auto& coeffs = shared_coeffs();
  EXPECT_EQ(qzeta::zeta_eq3(D, 1, coeffs.table(1)).value, BigRat::parse("1/30"));
  EXPECT_EQ(qzeta::zeta_eq3(D, 3, coeffs.table(3)).value, BigRat::parse("67/630"));
  EXPECT_EQ(qzeta::zeta_eq3(D, 3, coeffs.table(3)).method, qzeta::Method::eq3);
}

TEST(ModularZeta, HandChainForFive) {
  // m = 1: -4 * (1 * e_1(5)) / (-240) with e_1(5) = 2.
  const auto D = Discriminant::make(5);
  auto& coeffs = shared_coeffs();
  EXPECT_EQ(qzeta::eq2_weighted_sum(D, 1, coeffs.table(1)), BigInt(2));
  EXPECT_EQ(qzeta::eq3_weighted_sum(D, 2, coeffs.table(2)), BigInt(2));
}

TEST(ModularZeta, ECallCountsAtSix) {
  const auto D = Discriminant::make(5);
  const auto& ct = shared_coeffs().table(6);
  ASSERT_EQ(ct.r, 3);
  qzeta::ArithStats eq2, eq3;
  const auto z2 = qzeta::zeta_eq2(D, 6, ct, nullptr, &eq2);
  const auto z3 = qzeta::zeta_eq3(D, 6, ct, nullptr, &eq3);
  EXPECT_EQ(z2.value, z3.value);
  EXPECT_EQ(eq3.e_calls, 3U);
  EXPECT_EQ(eq2.e_calls, 5U);
}

TEST(ModularZeta, Eq3AlwaysMakesRCalls) {
  for (std::int64_t d : oracle::fundamental_discriminants(60)) {
    for (int m = 1; m <= 20; ++m) {
      const auto& ct = shared_coeffs().table(m);
      qzeta::ArithStats stats;
      qzeta::eq3_weighted_sum(Discriminant::make(d), m, ct, nullptr, &stats);
      EXPECT_EQ(stats.e_calls, static_cast<std::uint64_t>(ct.r));
    }
  }
}

TEST(ModularZeta, CrossFormulaAgreementSmall) {
  // The full D <= 100, 2m <= 40 sweep runs in the acceptance binary.
  for (std::int64_t d : oracle::fundamental_discriminants(40)) {
    const auto D = Discriminant::make(d);
    const auto eq1 = qzeta::zeta_eq1_range(D, 24, shared_table(), qzeta::Eq1Variant::batch);
    const auto eq2 = qzeta::zeta_modular_range(D, 24, shared_coeffs(), qzeta::ModularFormula::eq2);
    const auto eq3 = qzeta::zeta_modular_range(D, 24, shared_coeffs(), qzeta::ModularFormula::eq3, true);
    for (std::size_t i = 0; i < eq1.size(); ++i) {
      EXPECT_EQ(eq1[i].value, eq2[i].value) << d << " " << eq1[i].m;
      EXPECT_EQ(eq1[i].value, eq3[i].value) << d << " " << eq1[i].m;
    }
  }
}

TEST(ModularZeta, IntegralityBeforeFinalDivisionProperty) {
  // zeta * c_{4m} / -4 from the elementary formula must be an integer and
  // equal both modular weighted sums.
  const auto all = oracle::fundamental_discriminants(200);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t d = all[static_cast<std::size_t>(oracle::uniform(0, static_cast<std::int64_t>(all.size()) - 1))];
    const int m = static_cast<int>(oracle::uniform(1, 15));
    const auto D = Discriminant::make(d);
    const auto& ct = shared_coeffs().table(m);
    const BigRat z = qzeta::zeta_eq1(D, m, shared_table(), qzeta::Eq1Variant::batch).value;
    const BigRat scaled = z * BigRat(ct.leading()) / BigRat(-4);
    ASSERT_TRUE(scaled.is_integer()) << d << " " << m << " " << scaled;
    EXPECT_EQ(scaled.num(), qzeta::eq3_weighted_sum(D, m, ct)) << d << " " << m;
    EXPECT_EQ(scaled.num(), qzeta::eq2_weighted_sum(D, m, ct)) << d << " " << m;
  }
}

TEST(ModularZeta, TableMismatch) {
  const auto D = Discriminant::make(5);
  EXPECT_THROW(qzeta::zeta_eq3(D, 2, shared_coeffs().table(1)), qzeta::DomainError);
  qzeta::CoeffTable zero{1, 1, {BigInt(0), BigInt(1)}};
  EXPECT_THROW(qzeta::zeta_eq3(D, 1, zero), qzeta::InternalInconsistency);
  qzeta::ModularCoefficients coeffs(4);
  EXPECT_THROW(qzeta::zeta_modular_range(D, 5, coeffs, qzeta::ModularFormula::eq3), qzeta::DomainError);
  EXPECT_THROW(qzeta::zeta_modular_range(D, 6, coeffs, qzeta::ModularFormula::eq3), qzeta::WindowError);
}

TEST(Sweep, Example) {
  const auto r = qzeta::sweep(5, 4, false);
  ASSERT_EQ(r.values.size(), 2U);
  EXPECT_EQ(r.values.at({5, 1}).value, BigRat::parse("1/30"));
  EXPECT_EQ(r.values.at({5, 2}).value, BigRat::parse("1/60"));
  EXPECT_THROW(qzeta::sweep(4, 4, false), qzeta::DomainError);
  EXPECT_THROW(qzeta::sweep(50, 3, false), qzeta::DomainError);
}

TEST(Sweep, SkipsNonFundamental) {
  const auto r = qzeta::sweep(30, 2, false);
  std::vector<std::int64_t> ds;
  for (const auto& [key, z] : r.values) ds.push_back(key.first);
  EXPECT_EQ(ds, (std::vector<std::int64_t>{5, 8, 12, 13, 17, 21, 24, 28, 29}));
}

TEST(Sweep, CacheAndThreadsAreTransparent) {
  const auto plain = qzeta::sweep(150, 16, false);
  const auto cached = qzeta::sweep(150, 16, true);
  const auto threaded = qzeta::sweep(150, 16, true, 4);
  ASSERT_EQ(plain.values.size(), cached.values.size());
  for (const auto& [key, z] : plain.values) {
    EXPECT_EQ(cached.values.at(key).value, z.value);
    EXPECT_EQ(threaded.values.at(key).value, z.value);
  }
  for (std::size_t i = 0; i < plain.per_m.size(); ++i) {
    EXPECT_EQ(plain.per_m[i].hits + plain.per_m[i].misses, 0U);
    const auto& s = cached.per_m[i];
    EXPECT_EQ(s.hits + s.misses, s.sigma_calls);
    EXPECT_LE(s.misses, s.sigma_calls);
    EXPECT_EQ(s.sigma_calls, plain.per_m[i].sigma_calls);
    EXPECT_EQ(threaded.per_m[i].misses, s.misses);
    EXPECT_EQ(threaded.per_m[i].hits, s.hits);
  }
}

TEST(Sweep, AgreesWithElementaryFormula) {
  const auto r = qzeta::sweep(120, 12, true);
  for (const auto& [key, z] : r.values)
    EXPECT_EQ(z.value, qzeta::zeta_eq1(Discriminant::make(key.first), key.second, shared_table(), qzeta::Eq1Variant::batch).value);
}

TEST(Sweep, MissRatioFallsAsRangeGrows) {
  const int m = 6;
  double previous = 2.0;
  std::vector<double> misses;
  for (std::int64_t dmax : {50, 200, 800}) {
    const auto r = qzeta::sweep(dmax, 2 * m, true);
    const auto& s = r.per_m[static_cast<std::size_t>(m - 1)];
    const double ratio = static_cast<double>(s.misses) / static_cast<double>(s.sigma_calls);
    EXPECT_LT(ratio, previous) << "D_max = " << dmax;
    previous = ratio;
    misses.push_back(static_cast<double>(s.misses));
  }
  const double exponent = std::log(misses[2] / misses[0]) / std::log(800.0 / 50.0);
  EXPECT_LT(exponent, 1.25);
}
