#include <gtest/gtest.h>

#include <random>

#include "goalbench/payments.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

TEST(Achievement, PiecewiseDefinition)
{
  EXPECT_DOUBLE_EQ(achievement(-2.0, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(achievement(0.0, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(achievement(1.0, 4.0), 0.75);
  EXPECT_DOUBLE_EQ(achievement(4.0, 4.0), 0.0);
  EXPECT_DOUBLE_EQ(achievement(9.0, 4.0), 0.0);
}

TEST(Achievement, ZeroCeilingIsStep)
{
  EXPECT_DOUBLE_EQ(achievement(-1e-3, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(achievement(0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(achievement(1e-9, 0.0), 0.0);
}

// Unit D: goals (4, 7), actual (3, 4), Q = 20, w = 0.5.
TEST(Payment, UnitDAgainstGoals)
{
  EXPECT_NEAR(payment(1.0, 20.0, 0.5, 3.0), 6.6667, 1e-4);
  EXPECT_NEAR(payment(3.0, 20.0, 0.5, 4.0), 2.5, 1e-12);
}

TEST(Payment, ZeroAtCeiling)
{
  // Unit A, indicator 1: goal 3, actual 1, so s = 2 > d = 1.
  EXPECT_EQ(payment(2.0, 25.0, 0.5, 1.0), 0.0);
  EXPECT_EQ(payment(1.0, 25.0, 0.5, 1.0), 0.0);
}

TEST(Payment, FullWhenGoalMet)
{
  EXPECT_DOUBLE_EQ(payment(-1.0, 30.0, 0.5, 6.0), 15.0);
}

TEST(Payment, TotalOverIndicators)
{
  const auto d = fixtures::table1();
  const auto & e = d.dmu("E");
  const std::vector<double> goal_dev{1.0, 1.0};
  const auto p = total_payment(goal_dev, e, d.schedule);
  ASSERT_EQ(p.per_indicator.size(), 2u);
  EXPECT_DOUBLE_EQ(p.per_indicator[0], 10.0);
  EXPECT_DOUBLE_EQ(p.per_indicator[1], 6.25);
  EXPECT_DOUBLE_EQ(p.total, 16.25);
}

TEST(Region, BoundariesGoToLowerRegion)
{
  EXPECT_EQ(region_of(-1.0, 2.0), PaymentRegion::FullPay);
  EXPECT_EQ(region_of(0.0, 2.0), PaymentRegion::FullPay);
  EXPECT_EQ(region_of(1.0, 2.0), PaymentRegion::LinearPay);
  EXPECT_EQ(region_of(2.0, 2.0), PaymentRegion::LinearPay);
  EXPECT_EQ(region_of(2.5, 2.0), PaymentRegion::ZeroPay);
  EXPECT_EQ(region_of(0.5, 0.0), PaymentRegion::ZeroPay);
}

TEST(Region, AdmitsClosedBounds)
{
  EXPECT_TRUE(region_admits(PaymentRegion::FullPay, 0.0, 2.0));
  EXPECT_TRUE(region_admits(PaymentRegion::LinearPay, 0.0, 2.0));
  EXPECT_TRUE(region_admits(PaymentRegion::LinearPay, 2.0, 2.0));
  EXPECT_TRUE(region_admits(PaymentRegion::ZeroPay, 2.0, 2.0));
  EXPECT_FALSE(region_admits(PaymentRegion::FullPay, 0.1, 2.0));
  EXPECT_FALSE(region_admits(PaymentRegion::ZeroPay, 1.9, 2.0));
  EXPECT_FALSE(region_admits(PaymentRegion::LinearPay, 0.0, 0.0));
}

TEST(Linearized, RejectsInconsistentRegion)
{
  EXPECT_THROW(linearized_payment(PaymentRegion::FullPay, 1.0, 10.0, 0.5, 2.0), ContractViolation);
  EXPECT_THROW(linearized_payment(PaymentRegion::ZeroPay, 1.0, 10.0, 0.5, 2.0), ContractViolation);
  EXPECT_THROW(linearized_payment(PaymentRegion::LinearPay, 3.0, 10.0, 0.5, 2.0), ContractViolation);
}

TEST(Linearized, BothRegionsAgreeOnSharedBoundary)
{
  EXPECT_DOUBLE_EQ(linearized_payment(PaymentRegion::FullPay, 0.0, 10.0, 0.5, 2.0),
                   linearized_payment(PaymentRegion::LinearPay, 0.0, 10.0, 0.5, 2.0));
  EXPECT_DOUBLE_EQ(linearized_payment(PaymentRegion::ZeroPay, 2.0, 10.0, 0.5, 2.0),
                   linearized_payment(PaymentRegion::LinearPay, 2.0, 10.0, 0.5, 2.0));
}

class PaymentProperties : public ::testing::TestWithParam<std::uint64_t>
{
};

TEST_P(PaymentProperties, MatchesReferenceAndIsMonotone)
{
  std::mt19937_64 rng(GetParam());
  std::uniform_real_distribution<double> dev(-10.0, 20.0);
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for(int i = 0; i < 200; ++i)
  {
    const double d = i % 10 == 0 ? 0.0 : pos(rng);
    const double q = 1.0 + 100.0 * unit(rng);
    const double w = unit(rng);
    const double s1 = dev(rng);
    const double s2 = s1 + pos(rng);
    const double p1 = payment(s1, q, w, d);
    EXPECT_NEAR(p1, q * w * fixtures::reference_achievement(s1, d), 1e-12 * q);
    EXPECT_GE(p1, 0.0);
    EXPECT_LE(p1, q * w);
    EXPECT_LE(payment(s2, q, w, d), p1);
    const auto region = region_of(s1, d);
    EXPECT_TRUE(region_admits(region, s1, d));
    EXPECT_NEAR(linearized_payment(region, s1, q, w, d), p1, 1e-12 * q);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PaymentProperties, ::testing::Values(1u, 2u, 3u));
