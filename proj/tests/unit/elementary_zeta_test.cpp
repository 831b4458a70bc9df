#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/modular_zeta.hpp"

using qzeta::BigInt;
using qzeta::BigRat;
using qzeta::Discriminant;
using qzeta::Eq1Variant;

namespace {

std::vector<std::string> values_of(const std::vector<qzeta::ZetaValue>& zs) {
  std::vector<std::string> out;
  for (const auto& z : zs) out.push_back(z.value.str());
  return out;
}

std::uint64_t range_mults(std::int64_t d, int M, Eq1Variant variant) {
  const auto table = qzeta::bernoulli_table(M);
  qzeta::MulCounter c;
  {
    qzeta::CountingScope scope(c);
    qzeta::zeta_eq1_range(Discriminant::make(d), M, table, variant);
  }
  return c.mults;
}

}  // namespace

TEST(Eq1, SingleValueExamples) {
  const auto table = qzeta::bernoulli_table(6);
  const auto D = Discriminant::make(5);
  for (auto variant : {Eq1Variant::naive, Eq1Variant::batch}) {
    EXPECT_EQ(qzeta::zeta_eq1(D, 1, table, variant).value, BigRat::parse("1/30"));
    EXPECT_EQ(qzeta::zeta_eq1(D, 2, table, variant).value, BigRat::parse("1/60"));
    EXPECT_EQ(qzeta::zeta_eq1(D, 3, table, variant).value, BigRat::parse("67/630"));
  }
  EXPECT_EQ(qzeta::zeta_eq1(D, 3, table, Eq1Variant::batch).method, qzeta::Method::eq1_batch);
  EXPECT_EQ(qzeta::zeta_eq1(D, 3, table, Eq1Variant::naive).method, qzeta::Method::eq1_naive);
}

TEST(Eq1, HandChainTerms) {
  // chi_5 = (1, -1, -1, 1, 0) and B_2(1/5) = 1/150, B_2(2/5) = -11/150.
  const auto table = qzeta::bernoulli_table(6);
  const auto D = Discriminant::make(5);
  EXPECT_EQ(qzeta::eq1_term(D, 1, 1, table), BigRat::parse("1/150"));
  EXPECT_EQ(qzeta::eq1_term(D, 2, 1, table), BigRat::parse("11/150"));
  EXPECT_EQ(qzeta::eq1_term(D, 5, 1, table), BigRat(0));
  EXPECT_EQ(qzeta::eq1_term(D, 1, 3, table), BigRat::parse("4537/656250"));
  EXPECT_EQ(qzeta::eq1_term(D, 2, 3, table), BigRat::parse("12347/656250"));
}

TEST(Eq1, RangeExamples) {
  const auto table = qzeta::bernoulli_table(6);
  const auto D = Discriminant::make(5);
  const std::vector<std::string> want = {"1/30", "1/60", "67/630"};
  EXPECT_EQ(values_of(qzeta::zeta_eq1_range(D, 6, table, Eq1Variant::batch)), want);
  EXPECT_EQ(values_of(qzeta::zeta_eq1_range(D, 6, table, Eq1Variant::naive)), want);
  EXPECT_EQ(values_of(qzeta::zeta_eq1_range(D, 2, table, Eq1Variant::batch)), std::vector<std::string>{"1/30"});
}

TEST(Eq1, D8AgreesWithModularRoute) {
  const auto D = Discriminant::make(8);
  const auto eq1 = qzeta::zeta_eq1_range(D, 2, qzeta::bernoulli_table(2), Eq1Variant::batch);
  qzeta::ModularCoefficients coeffs(2);
  ASSERT_EQ(eq1.size(), 1U);
  EXPECT_EQ(eq1[0].value, qzeta::zeta_eq3(D, 1, coeffs.table(1)).value);
}

TEST(Eq1, Errors) {
  const auto table = qzeta::bernoulli_table(6);
  const auto D = Discriminant::make(5);
  EXPECT_THROW(qzeta::zeta_eq1_range(D, 8, table, Eq1Variant::batch), qzeta::TableUnderflow);
  EXPECT_THROW(qzeta::zeta_eq1_range(D, 5, table, Eq1Variant::batch), qzeta::DomainError);
  EXPECT_THROW(qzeta::zeta_eq1_range(D, 0, table, Eq1Variant::batch), qzeta::DomainError);
  EXPECT_THROW(qzeta::zeta_eq1(D, 0, table, Eq1Variant::batch), qzeta::DomainError);
  EXPECT_THROW(qzeta::zeta_eq1(D, 4, table, Eq1Variant::batch), qzeta::TableUnderflow);
}

TEST(Eq1, VariantsAgree) {
  const auto table = qzeta::bernoulli_table(20);
  for (std::int64_t d : oracle::fundamental_discriminants(60)) {
    const auto D = Discriminant::make(d);
    const auto naive = qzeta::zeta_eq1_range(D, 20, table, Eq1Variant::naive);
    const auto batch = qzeta::zeta_eq1_range(D, 20, table, Eq1Variant::batch);
    EXPECT_EQ(values_of(naive), values_of(batch)) << "D = " << d;
  }
}

TEST(Eq1, RangeMatchesSingleValues) {
  const auto table = qzeta::bernoulli_table(16);
  for (std::int64_t d : {5, 8, 12, 13, 17, 21, 24}) {
    const auto D = Discriminant::make(d);
    const auto range = qzeta::zeta_eq1_range(D, 16, table, Eq1Variant::batch);
    for (int m = 1; m <= 8; ++m)
      EXPECT_EQ(range[static_cast<std::size_t>(m - 1)].value, qzeta::zeta_eq1(D, m, table, Eq1Variant::naive).value);
  }
}

TEST(Eq1, TermIsSymmetricUnderReflection) {
  const auto table = qzeta::bernoulli_table(20);
  const auto all = oracle::fundamental_discriminants(500);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t d = all[static_cast<std::size_t>(oracle::uniform(0, static_cast<std::int64_t>(all.size()) - 1))];
    const auto D = Discriminant::make(d);
    const std::int64_t j = oracle::uniform(1, d - 1);
    const int m = static_cast<int>(oracle::uniform(1, 10));
    EXPECT_EQ(qzeta::eq1_term(D, j, m, table), qzeta::eq1_term(D, d - j, m, table)) << d << " " << j << " " << m;
  }
}

TEST(Eq1, ValuesAreNonzeroAndPositive) {
  // Both zeta(1-2m) and L(1-2m, chi_D) carry the sign (-1)^m, so the product is positive.
  const auto table = qzeta::bernoulli_table(20);
  for (std::int64_t d : oracle::fundamental_discriminants(100)) {
    const auto zs = qzeta::zeta_eq1_range(Discriminant::make(d), 20, table, Eq1Variant::batch);
    for (const auto& z : zs) {
      EXPECT_FALSE(z.value.is_zero());
      EXPECT_EQ(z.value.sign(), 1) << d << " " << z.m;
    }
  }
}

TEST(Eq1, BatchCountIsQuadraticInMNaiveCubic) {
  const double batch_ratio = static_cast<double>(range_mults(13, 64, Eq1Variant::batch)) /
                             static_cast<double>(range_mults(13, 32, Eq1Variant::batch));
  const double naive_ratio = static_cast<double>(range_mults(13, 64, Eq1Variant::naive)) /
                             static_cast<double>(range_mults(13, 32, Eq1Variant::naive));
  EXPECT_LE(batch_ratio, 4.5);
  EXPECT_GE(naive_ratio, 5.5);
}

TEST(Eq1, CountIsLinearInD) {
  // Doubling D roughly doubles the number of j terms.
  const double ratio =
      static_cast<double>(range_mults(401, 20, Eq1Variant::batch)) / static_cast<double>(range_mults(197, 20, Eq1Variant::batch));
  EXPECT_GT(ratio, 1.5);
  EXPECT_LT(ratio, 3.0);
}

TEST(Eq1, LFactorizationSoftCheck) {
  // zeta_D(1-2m) / zeta(1-2m) = L(1-2m, chi_D) should be p-integral for
  // primes p > 2m + 1 not dividing D.  Soft: violations are logged only.
  const auto table = qzeta::bernoulli_table(20);
  int checked = 0;
  int violations = 0;
  for (std::int64_t d : oracle::fundamental_discriminants(80)) {
    const auto zs = qzeta::zeta_eq1_range(Discriminant::make(d), 20, table, Eq1Variant::batch);
    for (const auto& z : zs) {
      const int two_m = 2 * z.m;
      const BigRat riemann = -table[two_m] / BigRat(two_m);
      const BigRat l_value = z.value / riemann;
      for (long p = two_m + 2; p < 200; ++p) {
        if (!oracle::is_prime_small(static_cast<std::uint64_t>(p)) || d % p == 0) continue;
        ++checked;
        if (*qzeta::valuation_p(l_value, p) < 0) {
          ++violations;
          std::cout << "[soft] L(1-" << two_m << ", chi_" << d << ") not " << p << "-integral\n";
        }
      }
    }
  }
  std::cout << "[soft] L-factorization: " << checked << " checks, " << violations << " violations\n";
  EXPECT_GT(checked, 0);
}
