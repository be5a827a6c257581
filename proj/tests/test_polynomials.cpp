#include <gtest/gtest.h>

#include "oracles.hpp"
#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/polynomials.hpp"

using namespace periodscape;

TEST(Polynomial, TrimsAndReportsDegree) {
  const Polynomial p({-1, 0, 1, 0, 0});
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_TRUE(p.is_monic());
  EXPECT_EQ(p[7], 0);
  EXPECT_EQ(Polynomial::power_minus_one(4).coeffs(), (std::vector<std::int64_t>{-1, 0, 0, 0, 1}));
}

TEST(Polynomial, MultiplyMatchesSchoolbook) {
  const std::vector<std::int64_t> a{3, -2, 0, 5}, b{-1, 4, 7};
  EXPECT_EQ((Polynomial(a) * Polynomial(b)).coeffs(), oracle::poly_mul(a, b));
}

TEST(Polynomial, MultiplyOverflowIsReported) {
  const Polynomial big({INT64_MAX / 2, 1});
  EXPECT_THROW(big * big, overflow_error);
}

TEST(Cyclotomic, SmallCases) {
  EXPECT_EQ(cyclotomic(1).coeffs(), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic(2).coeffs(), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(cyclotomic(5).coeffs(), (std::vector<std::int64_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic(6).coeffs(), (std::vector<std::int64_t>{1, -1, 1}));
  EXPECT_EQ(cyclotomic(9).coeffs(), (std::vector<std::int64_t>{1, 0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(cyclotomic(10).coeffs(), (std::vector<std::int64_t>{1, -1, 1, -1, 1}));
}

// The product of Phi_d over d | n, multiplied independently, is x^n - 1.
TEST(Cyclotomic, ProductIdentityAndDegree) {
  for (std::uint64_t n = 1; n <= 130; ++n) {
    std::vector<std::int64_t> prod{1};
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) prod = oracle::poly_mul(prod, cyclotomic(d).coeffs());
    std::vector<std::int64_t> expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    ASSERT_EQ(prod, expect) << "n = " << n;
    EXPECT_EQ(cyclotomic(n).degree(), euler_totient(n)) << "n = " << n;
    EXPECT_TRUE(cyclotomic(n).is_monic());
  }
}

TEST(Cyclotomic, FirstCoefficientOutsideMinusOneToOne) {
  const auto p = cyclotomic(105);
  EXPECT_EQ(p[7], -2);
  EXPECT_EQ(p[41], -2);
  for (std::uint64_t n = 1; n < 105; ++n) {
    const auto phi = cyclotomic(n);
    for (auto c : phi.coeffs()) ASSERT_LE(std::abs(c), 1) << "n = " << n;
  }
}

TEST(Recurrence, FromPolynomial) {
  const auto r = recurrence_from(cyclotomic(5));
  EXPECT_EQ(r.coeffs(), (std::vector<std::int64_t>{-1, -1, -1, -1}));
  EXPECT_EQ(recurrence_from(Polynomial::power_minus_one(3)).coeffs(), (std::vector<std::int64_t>{0, 0, 1}));
  EXPECT_EQ(recurrence_from(Polynomial({-1, -1, 1})).coeffs(), fibonacci_recurrence().coeffs());
  EXPECT_EQ(characteristic_polynomial(fibonacci_recurrence()).coeffs(), (std::vector<std::int64_t>{-1, -1, 1}));
}

TEST(Recurrence, RejectsBadInput) {
  EXPECT_THROW(recurrence_from(Polynomial({1, 2})), std::invalid_argument);
  EXPECT_THROW(recurrence_from(Polynomial({1})), std::invalid_argument);
  EXPECT_THROW(Recurrence(std::vector<std::int64_t>{}), std::invalid_argument);
  EXPECT_THROW(Recurrence(std::vector<std::int64_t>{1, 0}), std::invalid_argument);
}

TEST(Recurrence, ParityTransformNegatesOddLags) {
  EXPECT_EQ(parity_transform(fibonacci_recurrence()).coeffs(), parity_recurrence().coeffs());
  EXPECT_EQ(parity_transform(Recurrence({1, 2, 3, 4})).coeffs(), (std::vector<std::int64_t>{-1, 2, -3, 4}));
  // Phi_p(-x) = Phi_2p(x) up to sign for odd p.
  EXPECT_EQ(parity_transform(recurrence_from(cyclotomic(7))).coeffs(), recurrence_from(cyclotomic(14)).coeffs());
}

TEST(ExactDivide, RejectsRemainder) {
  EXPECT_THROW(exact_divide(Polynomial({1, 0, 1}), Polynomial({-1, 1})), std::domain_error);
  EXPECT_EQ(exact_divide(Polynomial::power_minus_one(6), cyclotomic(6)).coeffs(),
            oracle::poly_mul(oracle::poly_mul({-1, 1}, {1, 1}), {1, 1, 1}));
}
