#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tanfp/errors.hpp"
#include "tanfp/sampling.hpp"
#include "tanfp/sequence_space.hpp"

using namespace tanfp;

TEST(L1Vector, NormOfFinitePrefix) {
  EXPECT_DOUBLE_EQ(l1_norm(L1Vector{0.5, -0.25, 0.125}), 0.875);
  EXPECT_EQ(l1_norm(L1Vector{}), 0.0);
}

TEST(L1Vector, TrailingZerosAreIgnored) {
  const L1Vector a{1.0, 2.0};
  const L1Vector b{1.0, 2.0, 0.0, 0.0};
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.trimmed().size(), 2u);
  EXPECT_EQ(b[7], 0.0);
  EXPECT_NE(a, (L1Vector{1.0, 2.0, 1e-300}));
}

TEST(L1Vector, ArithmeticPadsShorterOperand) {
  const L1Vector a{1.0, 2.0, 3.0};
  const L1Vector b{0.5};
  EXPECT_EQ(a + b, (L1Vector{1.5, 2.0, 3.0}));
  EXPECT_EQ(b - a, (L1Vector{-0.5, -2.0, -3.0}));
  EXPECT_EQ(2.0 * b, (L1Vector{1.0}));
  EXPECT_EQ(-a, (L1Vector{-1.0, -2.0, -3.0}));
}

TEST(ProductPoint, NormAndDistance) {
  const ProductPoint p{-0.5, {0.25, -0.25}};
  const ProductPoint q{0.5, {0.0, 0.0, 1.0}};
  EXPECT_DOUBLE_EQ(product_norm(p), 1.0);
  EXPECT_DOUBLE_EQ(distance(p, q), 1.0 + 0.25 + 0.25 + 1.0);
  EXPECT_DOUBLE_EQ(distance(p, q), product_norm(p - q));
  EXPECT_EQ(distance(p, p), 0.0);
}

TEST(ProductPoint, TriangleInequalityOnSamples) {
  PointSampler s(7);
  const AdmissibleSet k{{-2.0, 2.0}, 3.0};
  for (int i = 0; i < 200; ++i) {
    const auto a = s.point_in(k);
    const auto b = s.point_in(k);
    const auto c = s.point_in(k);
    EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-15);
    EXPECT_DOUBLE_EQ(product_norm(a + b), distance(a, -b));
  }
}

TEST(AdmissibleSet, MembershipIsInclusive) {
  const auto k = AdmissibleSet::unit_box_ball();
  EXPECT_TRUE(in_set({0.0, {1.0}}, k));
  EXPECT_TRUE(in_set({1.0, {0.5, -0.5}}, k));
  EXPECT_FALSE(in_set({1.0 + 1e-15, {}}, k));
  EXPECT_FALSE(in_set({0.5, {0.5, 0.5000001}}, k));
  EXPECT_TRUE(in_set({1e9, {1e9}}, AdmissibleSet::everything()));
  EXPECT_FALSE(AdmissibleSet::everything().bounded());
  EXPECT_TRUE(k.bounded());
}

TEST(AdmissibleSet, IntersectTakesTightestParts) {
  const AdmissibleSet a{{-1.0, 0.5}, 2.0};
  const AdmissibleSet b{{0.0, 3.0}, 1.0};
  const auto c = intersect(a, b);
  EXPECT_EQ(c.scalar_interval.lo, 0.0);
  EXPECT_EQ(c.scalar_interval.hi, 0.5);
  EXPECT_EQ(c.ball_radius, 1.0);
}

TEST(Interval, DistanceTo) {
  const Interval iv{0.0, 1.0};
  EXPECT_EQ(iv.distance_to(0.5), 0.0);
  EXPECT_DOUBLE_EQ(iv.distance_to(-0.25), 0.25);
  EXPECT_DOUBLE_EQ(iv.distance_to(3.0), 2.0);
}

TEST(ConvexCombine, WeightedSum) {
  const std::vector<double> w{0.25, 0.75};
  const std::vector<ProductPoint> pts{{1.0, {4.0}}, {-1.0, {0.0, 8.0}}};
  const auto c = convex_combine(w, pts);
  EXPECT_DOUBLE_EQ(c.scalar, -0.5);
  EXPECT_EQ(c.vec, (L1Vector{1.0, 6.0}));
}

TEST(ConvexCombine, RejectsWeightsOffTheSimplex) {
  const std::vector<ProductPoint> pts(3);
  const std::vector<double> short_sum{0.3, 0.3, 0.3};
  try {
    convex_combine(short_sum, pts);
    FAIL() << "expected WeightSumViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WeightSumViolation);
    EXPECT_NE(std::string(e.what()).find("simplex"), std::string::npos);
  }
  const std::vector<double> negative{1.5, -0.25, -0.25};
  EXPECT_THROW(convex_combine(negative, pts), Error);
  const std::vector<double> near{0.5, 0.5 + 5e-13, -5e-13};
  EXPECT_THROW(convex_combine(near, pts), Error);
}

TEST(ConvexCombine, LengthMismatch) {
  const std::vector<double> w{0.5, 0.5};
  const std::vector<ProductPoint> pts(3);
  try {
    convex_combine(w, pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(ConvexCombine, ToleratesRoundingInsideTolerance) {
  const std::vector<double> w{0.1, 0.2, 0.7};  // sums to 1 only up to rounding
  const std::vector<ProductPoint> pts{{1.0, {}}, {1.0, {}}, {1.0, {}}};
  EXPECT_NEAR(convex_combine(w, pts).scalar, 1.0, 1e-15);
}

TEST(PointSampler, StaysInsideBoundedSet) {
  PointSampler s(42);
  const auto k = AdmissibleSet::unit_box_ball();
  double max_norm = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto p = s.point_in(k);
    ASSERT_TRUE(in_set(p, k));
    ASSERT_GE(p.vec.size(), 1u);
    ASSERT_LE(p.vec.size(), 8u);
    max_norm = std::max(max_norm, l1_norm(p.vec));
  }
  EXPECT_GT(max_norm, 0.99);
}

TEST(PointSampler, SameSeedSameStream) {
  PointSampler a(123);
  PointSampler b(123);
  PointSampler c(124);
  const auto k = AdmissibleSet::unit_box_ball();
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const auto pa = a.point_in(k);
    EXPECT_EQ(pa, b.point_in(k));
    differs = differs || !(pa == c.point_in(k));
  }
  EXPECT_TRUE(differs);
}

TEST(PointSampler, UnboundedSetThrows) {
  PointSampler s(1);
  try {
    s.point_in(AdmissibleSet::everything());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
  }
}

TEST(PointSampler, Uniform01Range) {
  PointSampler s(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const int k = s.uniform_int(1, 8);
    ASSERT_GE(k, 1);
    ASSERT_LE(k, 8);
  }
}
