#include "corrwit/decide.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "corrwit/construct.hpp"

namespace corrwit {
namespace {

Decision p2p2(Int a, Int b, Int c) { return decide_p2p2({a, b, c}); }

TEST(DecideP2P2, Examples) {
  EXPECT_EQ(p2p2(1, 1, 1), (Decision{Verdict::Representable, Reason::HyperbolicInequality}));
  EXPECT_EQ(p2p2(1, 2, 5), (Decision{Verdict::NotRepresentable, Reason::IndexInequality}));
  EXPECT_EQ(p2p2(2, 0, 0), (Decision{Verdict::NotRepresentable, Reason::ZeroBNotUnit}));
  EXPECT_EQ(p2p2(1, 0, 0), (Decision{Verdict::Representable, Reason::UnitClass}));
  EXPECT_EQ(p2p2(0, 0, 1), (Decision{Verdict::Representable, Reason::UnitClass}));
  EXPECT_EQ(p2p2(1, 2, 4).verdict, Verdict::Representable);
  EXPECT_EQ(p2p2(-1, 5, 0), (Decision{Verdict::NotRepresentable, Reason::NegativeCoefficient}));
  EXPECT_EQ(p2p2(0, 0, 0).reason, Reason::ZeroBNotUnit);
}

TEST(DecideP2P2, TransposeSymmetry) {
  for (Int a = -3; a <= 12; ++a) {
    for (Int b = -3; b <= 12; ++b) {
      for (Int c = -3; c <= 12; ++c) ASSERT_EQ(p2p2(a, b, c), p2p2(c, b, a)) << a << "," << b << "," << c;
    }
  }
}

TEST(DecideP2P2, AgreesWithConstructor) {
  for (Int a = 0; a <= 15; ++a) {
    for (Int b = 0; b <= 15; ++b) {
      for (Int c = 0; c <= 15; ++c) {
        const bool expect = p2p2(a, b, c).verdict == Verdict::Representable && a > 0 && b > 0 && c > 0;
        bool built = true;
        try {
          represent_general({a, b, c});
        } catch (const Error&) {
          built = false;
        }
        ASSERT_EQ(built, expect) << a << "," << b << "," << c;
      }
    }
  }
}

TEST(DecideP2P1, Examples) {
  EXPECT_TRUE(decide_p2p1(0, 3).affirmative());
  EXPECT_EQ(decide_p2p1(1, 0), (Decision{Verdict::Representable, Reason::UnitClass}));
  EXPECT_EQ(decide_p2p1(2, 0), (Decision{Verdict::NotRepresentable, Reason::ZeroBNotUnit}));
  EXPECT_EQ(decide_p2p1(-1, 3).reason, Reason::NegativeCoefficient);
}

TEST(DecideP1P1, Examples) {
  EXPECT_EQ(decide_p1p1(1, 1), (Decision{Verdict::Representable, Reason::PositiveCoefficients}));
  EXPECT_EQ(decide_p1p1(0, 1), (Decision{Verdict::Representable, Reason::UnitClass}));
  EXPECT_EQ(decide_p1p1(0, 2), (Decision{Verdict::NotRepresentable, Reason::DegenerateNotUnit}));
  EXPECT_EQ(decide_p1p1(0, 0).verdict, Verdict::NotRepresentable);
}

TEST(CheckSpatial, Examples) {
  EXPECT_EQ(check_spatial({1, 1, 1, 1}),
            (Decision{Verdict::ConjecturallyRepresentable, Reason::SpatialInequalities}));
  EXPECT_EQ(check_spatial({1, 0, 0, 0}), (Decision{Verdict::ConjecturallyRepresentable, Reason::UnitClass}));
  EXPECT_EQ(check_spatial({1, 1, 0, 0}).verdict, Verdict::ConjecturallyRepresentable);
  EXPECT_EQ(check_spatial({1, 1, 2, 1}).reason, Reason::IndexInequality);
  EXPECT_EQ(check_spatial({2, 0, 0, 0}).reason, Reason::ZeroMiddleNotUnit);
}

TEST(CheckSpatial, AlwaysFlaggedConjectural) {
  for (Int a = -1; a <= 3; ++a) {
    for (Int b = -1; b <= 3; ++b) {
      for (Int c = -1; c <= 3; ++c) {
        for (Int d = -1; d <= 3; ++d) ASSERT_TRUE(check_spatial({a, b, c, d}).conjectural());
      }
    }
  }
}

TEST(CheckSpatial, ReversalInvariant) {
  for (Int a = -1; a <= 6; ++a) {
    for (Int b = -1; b <= 6; ++b) {
      for (Int c = -1; c <= 6; ++c) {
        for (Int d = -1; d <= 6; ++d) ASSERT_EQ(check_spatial({a, b, c, d}), check_spatial({d, c, b, a}));
      }
    }
  }
}

TEST(Predicates, Examples) {
  const std::vector<Int> seq{1, 2, 3, 4, 2, 1};
  EXPECT_TRUE(log_concave(seq));
  EXPECT_TRUE(no_internal_zeros(seq));
  EXPECT_FALSE(log_concave(std::vector<Int>{1, 1, 3}));
  EXPECT_TRUE(log_concave(std::vector<Int>{}));
  EXPECT_TRUE(log_concave(std::vector<Int>{7}));
  EXPECT_FALSE(no_internal_zeros(std::vector<Int>{1, 0, 1}));
  EXPECT_TRUE(no_internal_zeros(std::vector<Int>{0, 1, 2, 0}));
  EXPECT_TRUE(no_internal_zeros(std::vector<Int>{0, 0}));
}

TEST(DecideMultiple, Examples) {
  EXPECT_EQ(decide_multiple({5, 5, 5, {1, 2, 3, 4, 2, 1}}),
            (Decision{Verdict::MultipleRepresentable, Reason::LogConcaveNoInternalZeros}));
  EXPECT_EQ(decide_multiple({2, 2, 2, {1, 0, 1}}),
            (Decision{Verdict::MultipleNotRepresentable, Reason::InternalZeros}));
  EXPECT_EQ(decide_multiple({2, 2, 2, {1, 1, 3}}),
            (Decision{Verdict::MultipleNotRepresentable, Reason::NotLogConcave}));
  EXPECT_EQ(decide_multiple({2, 2, 2, {0, 0, 0}}).verdict, Verdict::NotRepresentable);
  EXPECT_EQ(decide_multiple({3, 3, 2, {0, 0, 0}}),
            (Decision{Verdict::MultipleNotRepresentable, Reason::ZeroSequence}));
}

TEST(DecideMultiple, CornerClasses) {
  // Fundamental class of P^2 x P^1: k = 3, single index i = 2.
  EXPECT_EQ(corner_class({2, 1, 3, {1}})->kind, CornerClass::Fundamental);
  EXPECT_EQ(decide_multiple({2, 1, 3, {1}}), (Decision{Verdict::Representable, Reason::CornerUnit}));
  EXPECT_EQ(decide_multiple({2, 1, 3, {2}}), (Decision{Verdict::NotRepresentable, Reason::CornerMultiplier}));
  // [P^3 x P^0] in P^3 x P^4, k = 3, indices 0..3.
  const auto first = corner_class({3, 4, 3, {0, 0, 0, 1}});
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(first->kind, CornerClass::FirstFactor);
  // [P^0 x P^4], k = 4, indices 0..3.
  const auto second = corner_class({3, 4, 4, {5, 0, 0, 0}});
  ASSERT_TRUE(second.has_value());
  EXPECT_EQ(second->kind, CornerClass::SecondFactor);
  EXPECT_EQ(second->multiplier, 5);
  EXPECT_EQ(corner_class({3, 4, 0, {1}})->kind, CornerClass::Point);
  EXPECT_FALSE(corner_class({3, 4, 3, {0, 1, 0, 0}}).has_value());
  EXPECT_EQ(decide_multiple({3, 4, 3, {0, -1, 0, 0}}).reason, Reason::NegativeCoefficient);
}

TEST(DecideMultiple, InvalidIndexRange) {
  try {
    decide_multiple({2, 2, 2, {1, 1}});
    FAIL() << "expected InvalidIndexRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidIndexRange);
  }
  EXPECT_THROW(decide_multiple({2, 2, 5, {1}}), Error);
  EXPECT_THROW(decide_multiple({-1, 2, 0, {1}}), Error);
}

TEST(DecideMultiple, ReducesToP2P2) {
  for (Int a = -2; a <= 8; ++a) {
    for (Int b = -2; b <= 8; ++b) {
      for (Int c = -2; c <= 8; ++c) {
        const Decision exact = p2p2(a, b, c);
        const Decision multiple = decide_multiple({2, 2, 2, {c, b, a}});
        ASSERT_EQ(exact.affirmative(), multiple.affirmative()) << a << "," << b << "," << c;
      }
    }
  }
}

TEST(DecideMultiple, NonCornerBranchIsPredicateConjunction) {
  for (std::size_t len = 2; len <= 4; ++len) {
    const Int n = static_cast<Int>(len) - 1;
    std::vector<Int> e(len, 0);
    for (;;) {
      const MultiDegreeSequence s{n, n, n, e};
      if (!corner_class(s)) {
        bool nonzero = false;
        for (Int v : e) nonzero = nonzero || v != 0;
        const bool expect = nonzero && log_concave(e) && no_internal_zeros(e);
        ASSERT_EQ(decide_multiple(s).verdict == Verdict::MultipleRepresentable, expect);
      }
      std::size_t i = 0;
      while (i < len && e[i] == 4) e[i++] = 0;
      if (i == len) break;
      ++e[i];
    }
  }
}

}  // namespace
}  // namespace corrwit
