#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/centers.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/error.hpp"
#include "poncelet/fit.hpp"
#include "poncelet/triangle.hpp"

namespace poncelet {

enum class FamilyKind { confocal, incircle, circumcircle, homothetic, dual, excentral, generic };

inline constexpr std::array<FamilyKind, 7> kAllFamilyKinds{
    FamilyKind::confocal, FamilyKind::incircle, FamilyKind::circumcircle, FamilyKind::homothetic,
    FamilyKind::dual,     FamilyKind::excentral, FamilyKind::generic};

constexpr std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::confocal: return "confocal";
    case FamilyKind::incircle: return "incircle";
    case FamilyKind::circumcircle: return "circumcircle";
    case FamilyKind::homothetic: return "homothetic";
    case FamilyKind::dual: return "dual";
    case FamilyKind::excentral: return "excentral";
    case FamilyKind::generic: return "generic";
  }
  return "generic";
}

inline FamilyKind parse_family_kind(std::string_view name) {
  for (FamilyKind k : kAllFamilyKinds) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

/// Center that stays at the origin over the whole family.
constexpr std::optional<int> stationary_center_of(FamilyKind k) {
  switch (k) {
    case FamilyKind::confocal: return 9;
    case FamilyKind::incircle: return 1;
    case FamilyKind::circumcircle: return 3;
    case FamilyKind::homothetic: return 2;
    case FamilyKind::dual: return 4;
    case FamilyKind::excentral: return 6;
    case FamilyKind::generic: return std::nullopt;
  }
  return std::nullopt;
}

inline constexpr double kDefaultCircumcircleFree = 0.6;

struct FamilySpec {
  FamilyKind kind = FamilyKind::generic;
  Ellipse outer{1.0, 1.0};
  Ellipse caustic{0.5, 0.5};
  std::optional<double> free;                  // as supplied to make_family
  std::shared_ptr<const FamilySpec> base;      // confocal base of an excentral family
  std::optional<int> expected_stationary_center;

  /// Length used to make tolerances scale-free.
  double scale() const { return outer.scale(); }
};

/// a_c/a + b_c/b − 1; zero exactly when concentric axis-parallel ellipses
/// carry a closed family of triangles.
inline double closure_defect(const Ellipse& outer, const Ellipse& caustic) {
  return caustic.a() / outer.a() + caustic.b() / outer.b() - 1.0;
}

namespace detail {

/// Far end of the chord from `from` (on `outer`) through `toward`.
inline Point2 far_intersection(const Ellipse& outer, Point2 from, Point2 toward) {
  const Point2 d = toward - from;
  const double ia2 = 1.0 / (outer.a() * outer.a());
  const double ib2 = 1.0 / (outer.b() * outer.b());
  const double qa = d.x * d.x * ia2 + d.y * d.y * ib2;
  const double qb = 2.0 * (from.x * d.x * ia2 + from.y * d.y * ib2);
  return from + (-qb / qa) * d;
}

/// Next vertex going counter-clockwise: of the two tangents from `v`, the
/// one touching the caustic on the left of the ray origin→v.
inline Point2 next_vertex(const Ellipse& outer, const Ellipse& caustic, Point2 v) {
  const auto tangents = tangents_from(caustic, v);
  const Point2 touch =
      cross(v, tangents[0].point) > cross(v, tangents[1].point) ? tangents[0].point : tangents[1].point;
  return far_intersection(outer, v, touch);
}

}  // namespace detail

/// Tangent-chord construction: v1 on the outer ellipse at parameter t, each
/// next vertex at the far end of the forward tangent to the caustic.
inline Triangle triangle_by_chords(const Ellipse& outer, const Ellipse& caustic, double t) {
  const Point2 v1 = point_at(outer, t);
  const Point2 v2 = detail::next_vertex(outer, caustic, v1);
  const Point2 v3 = detail::next_vertex(outer, caustic, v2);
  return make_ccw({v1, v2, v3});
}

inline Triangle triangle_at(const FamilySpec& f, double t) {
  Triangle tri;
  switch (f.kind) {
    case FamilyKind::excentral:
      return derived_triangle(triangle_at(*f.base, t), DerivedKind::excentral);
    case FamilyKind::homothetic: {
      // Affine image of an equilateral triangle inscribed in the unit circle.
      constexpr double third = 2.0 * std::numbers::pi / 3.0;
      tri = {point_at(f.outer, t), point_at(f.outer, t + third), point_at(f.outer, t + 2.0 * third)};
      break;
    }
    default:
      tri = triangle_by_chords(f.outer, f.caustic, t);
      break;
  }
  if (is_degenerate(tri)) {
    fail(ErrorCode::DegenerateTriangle, "family produced a degenerate triangle");
  }
  return tri;
}

/// Largest tangency residual of the three sides against the caustic.
inline double porism_residual(const FamilySpec& f, double t) {
  const Triangle tri = triangle_at(f, t);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Line2 side = Line2::through(tri[i], tri[(i + 1) % 3]);
    worst = std::max(worst, tangency_residual(f.caustic, side));
  }
  return worst;
}

/// Parameter span after which the family repeats as a set of triangles:
/// the outer-ellipse parameter of v2 when v1 sits at t = 0.
inline double fundamental_period(const FamilySpec& f) {
  if (f.kind == FamilyKind::excentral) return fundamental_period(*f.base);
  if (f.kind == FamilyKind::homothetic) return 2.0 * std::numbers::pi / 3.0;
  const Triangle tri = triangle_by_chords(f.outer, f.caustic, 0.0);
  double tau = parameter_angle(f.outer, tri.v2);
  if (!(tau > 0.0)) tau += 2.0 * std::numbers::pi;
  return tau;
}

/// Smallest outer-ellipse parameter among the vertices of the triangle at t:
/// the same value for every t that yields the same triangle, and always in
/// [0, fundamental_period).
inline double class_parameter(const FamilySpec& f, double t) {
  if (f.kind == FamilyKind::excentral) return class_parameter(*f.base, t);
  constexpr double turn = 2.0 * std::numbers::pi;
  double best = turn;
  for (Point2 v : triangle_at(f, t).vertices()) {
    double p = std::fmod(parameter_angle(f.outer, v), turn);
    if (p < 0.0) p += turn;
    if (p >= turn) p -= turn;
    best = std::min(best, p);
  }
  return best;
}

namespace detail {

inline Ellipse confocal_caustic(double a, double b) {
  // Equivalent to a(δ − b²)/(a² − b²) and b(a² − δ)/(a² − b²), without the
  // cancellation as a → b.
  const double delta = std::sqrt(a * a * a * a - a * a * b * b + b * b * b * b);
  return {a * a * a / (delta + b * b), b * b * b / (a * a + delta)};
}

/// Axis-aligned ellipse through the excenters of the confocal base family.
inline Ellipse excenter_ellipse(const FamilySpec& base) {
  constexpr int kSamples = 720;
  std::vector<Point2> excenters;
  excenters.reserve(3 * kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / kSamples;
    const Triangle ex = derived_triangle(triangle_at(base, t), DerivedKind::excentral);
    excenters.insert(excenters.end(), {ex.v1, ex.v2, ex.v3});
  }
  const auto [A, B, C, D, E, F] = conic_fit(excenters).coefficients;
  return {std::sqrt(-F / A), std::sqrt(-F / C)};
}

}  // namespace detail

inline FamilySpec make_family(FamilyKind kind, double a, double b,
                              std::optional<double> free = std::nullopt) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorCode::InvalidArgument, "semi-axes must be finite and positive");
  }
  if (free && !std::isfinite(*free)) {
    fail(ErrorCode::FreeParamOutOfRange, "free parameter must be finite");
  }
  const bool uses_free = kind == FamilyKind::circumcircle || kind == FamilyKind::generic;
  if (free && !uses_free) {
    fail(ErrorCode::FreeParamOutOfRange,
         std::string(to_string(kind)) + " family takes no free parameter");
  }

  FamilySpec f{.kind = kind,
               .outer = Ellipse(a, b),
               .caustic = Ellipse(a / 2.0, b / 2.0),
               .free = free,
               .base = nullptr,
               .expected_stationary_center = stationary_center_of(kind)};
  switch (kind) {
    case FamilyKind::confocal:
      f.caustic = detail::confocal_caustic(a, b);
      break;
    case FamilyKind::incircle: {
      const double r = a * b / (a + b);
      f.caustic = Ellipse(r, r);
      break;
    }
    case FamilyKind::circumcircle: {
      if (a != b) fail(ErrorCode::InvalidAspect, "circumcircle family needs a circular outer conic (a = b)");
      const double share = free.value_or(kDefaultCircumcircleFree);
      if (!(share > 0.0 && share < 1.0)) {
        fail(ErrorCode::FreeParamOutOfRange, "circumcircle free parameter must lie in (0, 1)");
      }
      f.caustic = Ellipse(share * a, (1.0 - share) * a);
      break;
    }
    case FamilyKind::homothetic:
      break;
    case FamilyKind::dual: {
      const double s = a * a + b * b;
      f.caustic = Ellipse(a * b * b / s, a * a * b / s);
      break;
    }
    case FamilyKind::excentral: {
      f.base = std::make_shared<const FamilySpec>(make_family(FamilyKind::confocal, a, b));
      f.outer = detail::excenter_ellipse(*f.base);
      // Excentral sides are the external bisectors of the base triangle,
      // i.e. tangents of the base outer ellipse.
      f.caustic = f.base->outer;
      return f;
    }
    case FamilyKind::generic: {
      if (!free) fail(ErrorCode::FreeParamOutOfRange, "generic family needs the caustic x semi-axis");
      if (!(*free > 0.0 && *free < a)) {
        fail(ErrorCode::FreeParamOutOfRange, "generic free parameter must lie in (0, a)");
      }
      f.caustic = Ellipse(*free, b * (1.0 - *free / a));
      break;
    }
  }
  if (std::abs(closure_defect(f.outer, f.caustic)) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "caustic does not close a triangle family");
  }
  return f;
}

}  // namespace poncelet
