#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "periodscape/predict.hpp"

using namespace periodscape;

namespace {

Spectrum brute(const Recurrence& r, std::int64_t m) {
  const auto ref = oracle::enumerate(r.coeffs(), m);
  return Spectrum(ref.spectrum.begin(), ref.spectrum.end());
}

}  // namespace

TEST(Mobius, Values) {
  const int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (std::uint64_t n = 1; n <= 12; ++n) EXPECT_EQ(mobius(n), expect[n - 1]) << n;
}

TEST(Necklace, KnownValues) {
  EXPECT_EQ(necklace_count(3, 3), 8u);
  EXPECT_EQ(necklace_count(4, 2), 6u);
  EXPECT_EQ(necklace_count(4, 3), 20u);
  EXPECT_EQ(necklace_count(2, 1), 2u);
  EXPECT_EQ(necklace_count(1, 5), 0u);
}

TEST(Necklace, DivisorSumIsPower) {
  for (std::uint64_t m = 1; m <= 8; ++m)
    for (std::uint64_t n = 1; n <= 12; ++n) {
      std::uint64_t sum = 0;
      for (auto r : divisors(n)) sum += r * necklace_count(m, r);
      ASSERT_EQ(sum, static_cast<std::uint64_t>(oracle::ipow(static_cast<std::int64_t>(m), static_cast<unsigned>(n))));
    }
}

TEST(Necklace, BruteForceAperiodicClasses) {
  for (std::int64_t m = 1; m <= 4; ++m)
    for (std::size_t r = 1; r <= 8; ++r)
      ASSERT_EQ(necklace_count(static_cast<std::uint64_t>(m), r), oracle::necklaces(m, r)) << m << "," << r;
}

TEST(PredictPhiP, GoldenAndCases) {
  const auto p = predict_phi_p(5, 10);
  EXPECT_EQ(p.total, 2004u);
  EXPECT_EQ(p.by_length, (Spectrum{{1, 5}, {5, 1999}}));
  EXPECT_EQ(predict_phi_p(3, 4).by_length, (Spectrum{{1, 1}, {3, 5}}));
  EXPECT_THROW(predict_phi_p(4, 3), std::invalid_argument);
}

TEST(PredictPhiP, AgreesWithBruteForce) {
  for (std::uint64_t p : {2, 3, 5, 7})
    for (std::int64_t m = 1; m <= 9; ++m) {
      if (oracle::ipow(m, static_cast<unsigned>(p - 1)) > 600000) continue;
      ASSERT_EQ(predict_phi_p(p, static_cast<std::uint64_t>(m)).by_length,
                brute(recurrence_from(cyclotomic(p)), m))
          << "p = " << p << ", m = " << m;
    }
}

TEST(PredictPhi2P, GoldenAndCases) {
  const auto p = predict_phi_2p(5, 10);
  EXPECT_EQ(p.total, 1004u);
  EXPECT_EQ(p.by_length, (Spectrum{{1, 1}, {2, 2}, {5, 3}, {10, 998}}));
  EXPECT_THROW(predict_phi_2p(5, 3), uncovered_case);
  EXPECT_THROW(predict_phi_2p(2, 4), std::invalid_argument);
}

TEST(PredictPhi2P, AgreesWithBruteForceWhereCovered) {
  for (std::uint64_t p : {3, 5, 7})
    for (std::int64_t m = 2; m <= 9; ++m) {
      if (std::gcd(static_cast<std::uint64_t>(m), 2 * p) == 1) continue;
      if (oracle::ipow(m, static_cast<unsigned>(p - 1)) > 600000) continue;
      ASSERT_EQ(predict_phi_2p(p, static_cast<std::uint64_t>(m)).by_length,
                brute(recurrence_from(cyclotomic(2 * p)), m))
          << "p = " << p << ", m = " << m;
    }
}

TEST(PredictPhiPj, GoldenAndBruteForce) {
  const auto p = predict_phi_pj(3, 2, 12);
  EXPECT_EQ(p.total, 331784u);
  EXPECT_EQ(p.by_length, (Spectrum{{1, 3}, {3, 8}, {9, 331773}}));
  const std::pair<std::uint64_t, unsigned> cases[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
  for (const auto& [pp, j] : cases)
    for (std::int64_t m = 1; m <= 6; ++m) {
      const auto q = oracle::ipow(static_cast<std::int64_t>(pp), j);
      const auto order = static_cast<unsigned>(q - q / static_cast<std::int64_t>(pp));
      if (oracle::ipow(m, order) > 300000) continue;
      ASSERT_EQ(predict_phi_pj(pp, j, static_cast<std::uint64_t>(m)).by_length,
                brute(recurrence_from(cyclotomic(static_cast<std::uint64_t>(q))), m))
          << pp << "^" << j << " mod " << m;
    }
}

TEST(PredictPower, GoldenAndBruteForce) {
  const auto p = predict_power_cycle(6, 4);
  EXPECT_EQ(p.total, 700u);
  EXPECT_EQ(p.by_length, (Spectrum{{1, 4}, {2, 6}, {3, 20}, {6, 670}}));
  for (std::int64_t n = 1; n <= 7; ++n)
    for (std::int64_t m = 1; m <= 5; ++m) {
      if (oracle::ipow(m, static_cast<unsigned>(n)) > 100000) continue;
      ASSERT_EQ(predict_power_cycle(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)).by_length,
                brute(recurrence_from(Polynomial::power_minus_one(static_cast<std::size_t>(n))), m));
    }
}

TEST(ExactQuotient, IntegralityViolationCarriesContext) {
  try {
    exact_quotient(7, 3, "7 / 3");
    FAIL();
  } catch (const integrality_violation& e) {
    EXPECT_EQ(e.formula(), "7 / 3");
    EXPECT_EQ(e.numerator(), 7);
    EXPECT_EQ(e.denominator(), 3);
  }
  EXPECT_THROW(exact_quotient(-3, 3, "neg"), integrality_violation);
}

TEST(PredictOverflow, LargeModulusReportsOverflow) {
  EXPECT_THROW(predict_phi_p(97, 1000), overflow_error);
}

TEST(Verify, DiffListsDisagreeingLengths) {
  const auto land = enumerate_landscape(recurrence_from(cyclotomic(5)), 4, false);
  auto pred = predict_phi_p(5, 4);
  EXPECT_TRUE(verify_prediction(pred, land, "ok").match);
  pred.by_length[5] += 1;
  pred.total += 1;
  const auto rep = verify_prediction(pred, land, "tampered");
  EXPECT_FALSE(rep.match);
  ASSERT_EQ(rep.diffs.size(), 1u);
  EXPECT_EQ(rep.diffs[0].length, 5u);
  EXPECT_EQ(rep.diffs[0].predicted, rep.diffs[0].observed + 1);
}
