#include "ofi/metrics.hpp"

#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ofi {
namespace {

using R = Rational;

// Reference scenario rows.
constexpr BinaryConfusion kAi{1, 0, 0, 5};
constexpr BinaryConfusion kAj{7, 0, 1, 10};
constexpr BinaryConfusion kBi{0, 1, 0, 5};
constexpr BinaryConfusion kBj{0, 7, 0, 11};
constexpr BinaryConfusion kAlphaI{1, 1, 0, 5};
constexpr BinaryConfusion kAlphaJ{1, 7, 0, 11};

TEST(BinaryConfusion, DerivedTotals) {
  const BinaryConfusion cm{3, 4, 5, 6};
  EXPECT_EQ(cm.n(), 18);
  EXPECT_EQ(cm.positives(), 7);
  EXPECT_EQ(cm.negatives(), 11);
  EXPECT_EQ(cm.predicted_positives(), 8);
  EXPECT_EQ(cm.predicted_negatives(), 10);
  EXPECT_EQ(cm.positives() + cm.negatives(), cm.predicted_positives() + cm.predicted_negatives());
}

TEST(Benefit, ReferenceScenarios) {
  EXPECT_EQ(benefit(kAi), R(1, 6));
  EXPECT_EQ(benefit(kAj), R(8, 18));
  EXPECT_EQ(benefit(BinaryConfusion{0, 0, 0, 4}), R(0));
  EXPECT_EQ(benefit(kAlphaJ), R(1, 19));
}

TEST(ExpectedBenefit, ReferenceScenarios) {
  EXPECT_EQ(expected_benefit(kAj), R(7, 18));
  EXPECT_EQ(expected_benefit(kBj), R(7, 18));
  EXPECT_EQ(expected_benefit(BinaryConfusion{2, 0, 0, 0}), R(1));
  EXPECT_EQ(expected_benefit(kAlphaI), R(2, 7));
}

TEST(MarginalBenefit, ReferenceScenarios) {
  EXPECT_EQ(marginal_benefit(kAi), R(0));
  EXPECT_EQ(marginal_benefit(kAj), R(1, 18));
  EXPECT_EQ(marginal_benefit(kBi), R(-1, 6));
  EXPECT_EQ(marginal_benefit(kBj), R(-7, 18));
  EXPECT_EQ(marginal_benefit(kAlphaI), R(-1, 7));
  EXPECT_EQ(marginal_benefit(kAlphaJ), R(-7, 19));
  EXPECT_EQ(marginal_benefit(BinaryConfusion{4, 3, 3, 9}), R(0));
}

TEST(Metrics, EmptyGroupIsAnError) {
  const BinaryConfusion empty{};
  EXPECT_THROW(benefit(empty), EmptyGroupError);
  EXPECT_THROW(expected_benefit(empty), EmptyGroupError);
  EXPECT_THROW(marginal_benefit(empty), EmptyGroupError);
  EXPECT_THROW(disparate_impact(kAi, empty), EmptyGroupError);
}

TEST(Metrics, NegativeCellIsAnError) {
  EXPECT_THROW(benefit(BinaryConfusion{-1, 2, 0, 0}), DomainError);
}

TEST(Ofi, EmptyGroupErrorNamesTheGroup) {
  try {
    ofi(kAi, BinaryConfusion{});
    FAIL() << "expected EmptyGroupError";
  } catch (const EmptyGroupError& e) {
    EXPECT_EQ(e.which(), "second group");
  }
  try {
    ofi(BinaryConfusion{}, kAi);
    FAIL() << "expected EmptyGroupError";
  } catch (const EmptyGroupError& e) {
    EXPECT_EQ(e.which(), "first group");
  }
}

TEST(Ofi, ReferenceScenarios) {
  EXPECT_EQ(ofi(kAi, kAj), R(-1, 18));
  EXPECT_EQ(ofi(kBi, kBj), R(4, 18));
  EXPECT_EQ(ofi(kAlphaI, kAlphaJ), R(30, 133));
  EXPECT_EQ(to_decimal_string(ofi(kAi, kAj)), "-0.06");
  EXPECT_EQ(to_decimal_string(ofi(kBi, kBj)), "0.22");
  EXPECT_EQ(to_decimal_string(ofi(kAlphaI, kAlphaJ)), "0.23");
}

TEST(DisparateImpact, ReferenceScenarios) {
  EXPECT_EQ(disparate_impact(kAi, kAj), DiScore::finite(R(3, 8)));
  EXPECT_EQ(to_decimal_string(*disparate_impact(kAi, kAj).value()), "0.38");
  EXPECT_EQ(disparate_impact(kBi, kBj), DiScore::undefined_contextual_one());
  EXPECT_EQ(disparate_impact(kBi, kBj).value(), R(1));
  EXPECT_EQ(disparate_impact(kAlphaI, kAlphaJ), DiScore::finite(R(19, 7)));
  EXPECT_EQ(to_decimal_string(*disparate_impact(kAlphaI, kAlphaJ).value()), "2.71");
}

TEST(DisparateImpact, ZeroDenominatorWithNonzeroNumerator) {
  const auto di = disparate_impact(kAi, kBj);
  EXPECT_EQ(di.kind(), DiScore::Kind::UndefinedZeroDenominator);
  EXPECT_FALSE(di.value().has_value());
  EXPECT_EQ(disparate_impact(kBj, kAi), DiScore::finite(R(0)));
}

TEST(FourFifths, Verdicts) {
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(3, 8))), BiasVerdict::BiasTowardSecond);
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(1))), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(19, 7))), BiasVerdict::BiasTowardFirst);
  EXPECT_EQ(four_fifths_verdict(DiScore::undefined_contextual_one()),
            BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(four_fifths_verdict(DiScore::undefined_zero_denominator()), BiasVerdict::Undefined);
}

TEST(FourFifths, BandEndpointsAreNoBias) {
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(4, 5))), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(5, 4))), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(4, 5) - R(1, 1000000))),
            BiasVerdict::BiasTowardSecond);
  EXPECT_EQ(four_fifths_verdict(DiScore::finite(R(5, 4) + R(1, 1000000))),
            BiasVerdict::BiasTowardFirst);
}

TEST(FourFifths, InvalidBand) {
  EXPECT_THROW(four_fifths_verdict(DiScore::finite(R(1)), DiBand{R(2), R(1)}), ConfigError);
  EXPECT_THROW(four_fifths_verdict(DiScore::finite(R(1)), DiBand{R(0), R(1)}), ConfigError);
}

TEST(OfiVerdict, Thresholds) {
  EXPECT_EQ(ofi_verdict(R(0)), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(ofi_verdict(R(4, 18), R(3, 10)), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(ofi_verdict(R(2), R(3, 10)), BiasVerdict::BiasTowardFirst);
  EXPECT_EQ(ofi_verdict(R(-2), R(3, 10)), BiasVerdict::BiasTowardSecond);
  EXPECT_EQ(ofi_verdict(R(3, 10)), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(ofi_verdict(R(-3, 10)), BiasVerdict::NoBiasIndicated);
  EXPECT_EQ(ofi_verdict(R(4, 18), R(1, 5)), BiasVerdict::BiasTowardFirst);
}

TEST(OfiVerdict, NonPositiveThresholdIsConfigError) {
  EXPECT_THROW(ofi_verdict(R(0), R(0)), ConfigError);
  EXPECT_THROW(ofi_verdict(R(0), R(-1, 10)), ConfigError);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal_string(R(3, 8)), "0.38");
  EXPECT_EQ(to_decimal_string(R(-3, 8)), "-0.38");
  EXPECT_EQ(to_decimal_string(R(-1, 1000)), "0.00");
  EXPECT_EQ(to_decimal_string(R(19, 7), 4), "2.7143");
  EXPECT_EQ(to_decimal_string(R(5), 0), "5");
  EXPECT_EQ(to_fraction_string(R(-4, 18)), "-2/9");
  EXPECT_EQ(to_fraction_string(R(3)), "3");
}

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("3/10"), R(3, 10));
  EXPECT_EQ(parse_rational("0.3"), R(3, 10));
  EXPECT_EQ(parse_rational("-1.25"), R(-5, 4));
  EXPECT_EQ(parse_rational("-0.5"), R(-1, 2));
  EXPECT_EQ(parse_rational(".5"), R(1, 2));
  EXPECT_EQ(parse_rational("2"), R(2));
  EXPECT_EQ(parse_rational("6/-4"), R(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.3x"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

// Randomized properties. Fixed seed keeps failures reproducible.
class MetricProperties : public ::testing::Test {
 protected:
  static constexpr int kCases = 10000;
  std::mt19937_64 rng{0x0f1};
};

TEST_F(MetricProperties, RangesAndDecomposition) {
  for (int c = 0; c < kCases; ++c) {
    const auto cm = testing::random_confusion(rng);
    const auto b = benefit(cm);
    const auto eb = expected_benefit(cm);
    const auto mb = marginal_benefit(cm);
    ASSERT_TRUE(b >= 0 && b <= 1) << cm;
    ASSERT_TRUE(eb >= 0 && eb <= 1) << cm;
    ASSERT_TRUE(mb >= -1 && mb <= 1) << cm;
    ASSERT_EQ(mb, b - eb) << cm;
    ASSERT_EQ(mb == 0, cm.fp == cm.fn) << cm;
  }
}

TEST_F(MetricProperties, OfiRangeAntisymmetryAndScale) {
  std::uniform_int_distribution<std::int64_t> factor(1, 50);
  for (int c = 0; c < kCases; ++c) {
    const auto a = testing::random_confusion(rng);
    const auto b = testing::random_confusion(rng);
    const auto v = ofi(a, b);
    ASSERT_TRUE(v >= -2 && v <= 2);
    ASSERT_EQ(v, -ofi(b, a));
    ASSERT_EQ(ofi(a, a), 0);
    const auto k = factor(rng);
    const BinaryConfusion ak{a.tp * k, a.fn * k, a.fp * k, a.tn * k};
    const BinaryConfusion bk{b.tp * k, b.fn * k, b.fp * k, b.tn * k};
    ASSERT_EQ(ofi(ak, bk), v) << a << ' ' << b << " k=" << k;
  }
}

TEST_F(MetricProperties, DiReciprocityAndIdentity) {
  for (int c = 0; c < kCases; ++c) {
    const auto a = testing::random_confusion(rng);
    const auto b = testing::random_confusion(rng);
    const auto ab = disparate_impact(a, b);
    const auto ba = disparate_impact(b, a);
    if (ab.is_finite() && ba.is_finite()) {
      ASSERT_EQ(*ab.value() * *ba.value(), 1) << a << ' ' << b;
    }
    if (a.predicted_positives() > 0) {
      ASSERT_EQ(disparate_impact(a, a), DiScore::finite(R(1)));
    } else {
      ASSERT_EQ(disparate_impact(a, a), DiScore::undefined_contextual_one());
    }
    ASSERT_EQ(four_fifths_verdict(ab) == BiasVerdict::Undefined,
              ab.kind() == DiScore::Kind::UndefinedZeroDenominator);
  }
}

}  // namespace
}  // namespace ofi
