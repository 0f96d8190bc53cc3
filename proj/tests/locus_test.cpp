#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "poncelet/locus.hpp"

using namespace poncelet;

namespace {

constexpr double kPi = std::numbers::pi;

Locus sweep(const FamilySpec& f, int k, DerivedKind derived = DerivedKind::reference, int samples = 720) {
  return sweep_locus({f, Target::center(k), derived, samples});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SweepLocus, ConfocalMittenpunktIsStationary) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  const Locus l = sweep(f, 9);
  EXPECT_EQ(l.classification.kind, LocusKind::stationary);
  ASSERT_EQ(l.points.size(), 720u);
  for (Point2 p : l.points) EXPECT_LT(norm(p), 1e-7 * f.scale());
}

TEST(SweepLocus, CirclePairMakesEveryCenterStationary) {
  const FamilySpec f = make_family(FamilyKind::incircle, 1.3, 1.3);
  for (const auto& [k, name] : CenterRegistry::builtin().listing()) {
    EXPECT_EQ(sweep(f, k).classification.kind, LocusKind::stationary) << name;
  }
}

TEST(SweepLocus, ConfocalNotablesAreEllipses) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  for (int k : {1, 2, 3, 4, 5}) {
    const Locus l = sweep(f, k);
    EXPECT_EQ(l.classification.kind, LocusKind::ellipse) << "X" << k;
    EXPECT_LT(l.classification.conic_residual, 1e-7);
    EXPECT_EQ(l.classification.self_intersections, 0);
    ASSERT_TRUE(l.classification.conic_coefficients);
  }
}

TEST(SweepLocus, FeuerbachTracesTheCaustic) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  const Locus l = sweep(f, 11);
  EXPECT_EQ(l.classification.kind, LocusKind::ellipse);
  ASSERT_TRUE(l.classification.conic_coefficients);
  const auto axes = ellipse_axes(*l.classification.conic_coefficients);
  ASSERT_TRUE(axes);
  EXPECT_NEAR(axes->semi_major, f.caustic.a(), 1e-9);
  EXPECT_NEAR(axes->semi_minor, f.caustic.b(), 1e-9);
  for (Point2 p : l.points) EXPECT_LT(std::abs(boundary_residual(f.caustic, p)), 1e-12);
}

TEST(SweepLocus, SymmedianIsNotAConic) {
  const Locus l = sweep(make_family(FamilyKind::confocal, 2, 1), 6);
  EXPECT_EQ(l.classification.kind, LocusKind::nonconic);
  EXPECT_GT(l.classification.conic_residual, 1e-4);
  EXPECT_LT(l.classification.quartic_residual, 1e-8);
}

TEST(SweepLocus, X59SelfIntersects) {
  const Locus l = sweep(make_family(FamilyKind::confocal, 2, 1), 59);
  EXPECT_EQ(l.classification.kind, LocusKind::nonconic);
  EXPECT_GE(l.classification.self_intersections, 1);
  EXPECT_EQ(l.classification.self_intersections, oracle::brute_force_crossings(l.points));
}

TEST(SweepLocus, MedialVertexOfHomothetic) {
  const Locus l = sweep_locus({make_family(FamilyKind::homothetic, 2, 1), Target::vertex(1), DerivedKind::medial, 720});
  EXPECT_EQ(l.classification.kind, LocusKind::ellipse);
  const auto axes = ellipse_axes(*l.classification.conic_coefficients);
  ASSERT_TRUE(axes);
  EXPECT_NEAR(axes->semi_major, 1.0, 1e-9);
  EXPECT_NEAR(axes->semi_minor, 0.5, 1e-9);
}

TEST(SweepLocus, StationaryCenterPerFamily) {
  for (FamilyKind kind : kAllFamilyKinds) {
    if (kind == FamilyKind::generic) continue;
    const double a = kind == FamilyKind::circumcircle ? 1.0 : 1.7;
    const FamilySpec f = make_family(kind, a, 1.0);
    EXPECT_EQ(sweep(f, *f.expected_stationary_center, DerivedKind::reference, 64).classification.kind,
              LocusKind::stationary)
        << to_string(kind);
  }
}

TEST(SweepLocus, CenterParamsIdentifyTriangles) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  const Locus l = sweep(f, 1, DerivedKind::reference, 100);
  ASSERT_EQ(l.params.size(), l.points.size());
  EXPECT_EQ(l.points.size(), 100u);
  EXPECT_DOUBLE_EQ(l.params.front(), 0.0);
  for (std::size_t i = 0; i < l.params.size(); ++i) {
    if (i > 0) {
      EXPECT_GT(l.params[i], l.params[i - 1]);
    }
    EXPECT_LT(l.params[i], fundamental_period(f));
    EXPECT_LT(distance(center_position(triangle_at(f, l.params[i]), 1), l.points[i]), 1e-12);
  }
  const Locus v = sweep_locus({f, Target::vertex(1), DerivedKind::reference, 100});
  EXPECT_NEAR(v.params.back() + v.params[1], 2 * kPi, 1e-12);
  for (std::size_t i = 0; i < v.points.size(); ++i) EXPECT_LT(distance(v.points[i], point_at(f.outer, v.params[i])), 1e-15);
}

TEST(SweepLocus, RepeatedTrianglesMerge) {
  // Every homothetic triangle recurs after a third of a turn.
  const Locus l = sweep(make_family(FamilyKind::homothetic, 2, 1), 1, DerivedKind::reference, 99);
  EXPECT_EQ(l.points.size(), 33u);
  EXPECT_EQ(l.dropped_samples, 0);
  EXPECT_EQ(sweep(make_family(FamilyKind::homothetic, 2, 1), 1, DerivedKind::reference, 100).points.size(), 100u);
}

TEST(SweepLocus, ReflectionSymmetry) {
  // The mirror image of the triangle at t is the triangle at −t (x-axis) or
  // π − t (y-axis); the sample set is closed under the first.
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  for (int k : {1, 4, 6, 11, 59}) {
    const Locus l = sweep(f, k, DerivedKind::reference, 360);
    for (std::size_t i = 0; i < l.points.size(); ++i) {
      const Point2 p = l.points[i];
      double best = 1e300;
      for (Point2 q : l.points) best = std::min(best, distance(q, Point2{p.x, -p.y}));
      EXPECT_LT(best, 1e-6 * f.scale()) << "X" << k;
      const Point2 mirrored = center_position(triangle_at(f, kPi - l.params[i]), k);
      EXPECT_LT(distance(mirrored, Point2{-p.x, p.y}), 1e-6 * f.scale()) << "X" << k;
    }
  }
}

TEST(SweepLocus, ClassificationStableUnderDoubling) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  for (int k : {1, 2, 3, 4, 6, 9, 11, 59}) {
    EXPECT_EQ(sweep(f, k, DerivedKind::reference, 720).classification.kind,
              sweep(f, k, DerivedKind::reference, 1440).classification.kind)
        << "X" << k;
  }
}

TEST(SweepLocus, Validation) {
  const FamilySpec f = make_family(FamilyKind::confocal, 2, 1);
  EXPECT_EQ(code_of([&] { sweep(f, 1, DerivedKind::reference, 15); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([&] { sweep(f, 12); }), ErrorCode::UnknownCenter);
  EXPECT_EQ(code_of([&] { sweep_locus({f, Target::vertex(4), DerivedKind::reference, 720}); }), ErrorCode::OutOfRange);
  EXPECT_EQ(sweep(f, 1).dropped_samples, 0);
}

TEST(ClassifyLocus, Oracle) {
  const auto ellipse = oracle::ellipse_samples(2, 1, 720);
  const Classification e = classify_locus(ellipse);
  EXPECT_EQ(e.kind, LocusKind::ellipse);
  EXPECT_LT(e.conic_residual, 1e-12);

  EXPECT_EQ(classify_locus(oracle::ellipse_samples(1.5, 1.5, 100)).kind, LocusKind::circle);

  std::vector<Point2> line;
  for (int i = 0; i < 50; ++i) line.push_back({0.1 * i, 0.05 * i - 1});
  EXPECT_EQ(classify_locus(line).kind, LocusKind::segment);

  const std::vector<Point2> constant(40, Point2{0.3, -0.2});
  EXPECT_EQ(classify_locus(constant).kind, LocusKind::stationary);

  EXPECT_THROW(classify_locus(oracle::ellipse_samples(2, 1, 15)), Error);
}

TEST(ClassifyLocus, CyclicPermutationKeepsKind) {
  const Locus l = sweep(make_family(FamilyKind::confocal, 2, 1), 59, DerivedKind::reference, 240);
  for (std::size_t shift : {1u, 17u, 120u}) {
    std::vector<Point2> p = l.points;
    std::rotate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(shift), p.end());
    const Classification c = classify_locus(p, 2.0);
    EXPECT_EQ(c.kind, l.classification.kind);
    EXPECT_EQ(c.self_intersections, l.classification.self_intersections);
  }
}

TEST(SelfIntersections, Examples) {
  EXPECT_TRUE(self_intersections(oracle::ellipse_samples(2, 1, 50)).empty());
  const auto eight = self_intersections(oracle::figure_eight(200));
  ASSERT_EQ(eight.size(), 1u);
  EXPECT_LT(norm(eight[0].point), 1e-12);
}

TEST(SelfIntersections, MatchBruteForce) {
  // Rose-like curves with many crossings.
  for (int petals : {3, 5, 7}) {
    std::vector<Point2> pts;
    for (int i = 0; i < 500; ++i) {
      const double t = 2 * kPi * (i + 0.25) / 500;
      const double r = 1 + 0.5 * std::cos(petals * t);
      pts.push_back({r * std::cos(2 * t), r * std::sin(2 * t)});
    }
    EXPECT_EQ(static_cast<int>(self_intersections(pts).size()), oracle::brute_force_crossings(pts));
  }
}

TEST(HausdorffDistance, Examples) {
  const auto circle = oracle::ellipse_samples(1, 1, 2000);
  EXPECT_EQ(hausdorff_distance(circle, circle), 0.0);
  EXPECT_NEAR(hausdorff_distance(circle, oracle::ellipse_samples(1.1, 1.1, 2000)), 0.1, 1e-3);
  EXPECT_THROW(hausdorff_distance(circle, std::vector<Point2>{}), Error);
}
