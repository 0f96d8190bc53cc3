#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/error.hpp"
#include "poncelet/triangle.hpp"

namespace poncelet {

/// Side lengths, s1 opposite v1 and so on.
struct SideLengths {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double perimeter() const { return s1 + s2 + s3; }
};

inline SideLengths side_lengths(const Triangle& t) {
  const SideLengths s{distance(t.v2, t.v3), distance(t.v3, t.v1), distance(t.v1, t.v2)};
  const double slack = 1e-12 * s.perimeter();
  if (!(s.s1 < s.s2 + s.s3 - slack) || !(s.s2 < s.s3 + s.s1 - slack) ||
      !(s.s3 < s.s1 + s.s2 - slack)) {
    fail(ErrorCode::DegenerateTriangle, "side lengths violate the triangle inequality");
  }
  return s;
}

namespace trig {

/// Interior angle opposite the side of length `opposite`. The half-angle
/// form stays accurate for angles near 0 and π, where acos does not.
inline double angle(double opposite, double u, double v) {
  const double s = 0.5 * (opposite + u + v);
  const double r2 = std::max(0.0, (s - opposite) * (s - u) * (s - v) / s);
  return 2.0 * std::atan2(std::sqrt(r2), s - opposite);
}

inline double cos_angle(double opposite, double u, double v) {
  return (u * u + v * v - opposite * opposite) / (2.0 * u * v);
}

/// 1 − cos(x − y) written as 2 sin²((x − y)/2) to keep precision near 0.
inline double one_minus_cos_diff(double x, double y) {
  const double h = std::sin(0.5 * (x - y));
  return 2.0 * h * h;
}

}  // namespace trig

/// A triangle center given by the first of its cyclic trilinear coordinates.
struct CenterFunction {
  int index = 0;
  std::string name;
  std::function<double(double, double, double)> first_trilinear;
};

/// Index-keyed set of center functions. The built-in set covers X1–X11 and
/// X59; `add` registers more before the registry is shared.
class CenterRegistry {
 public:
  static const CenterRegistry& builtin() {
    static const CenterRegistry registry = make_builtin();
    return registry;
  }

  void add(CenterFunction fn) {
    if (fn.index <= 0 || !fn.first_trilinear) {
      fail(ErrorCode::InvalidArgument, "center functions need a positive index and a body");
    }
    const int k = fn.index;
    functions_.insert_or_assign(k, std::move(fn));
  }

  bool contains(int k) const { return functions_.count(k) != 0; }

  const CenterFunction& at(int k) const {
    const auto it = functions_.find(k);
    if (it == functions_.end()) {
      fail(ErrorCode::UnknownCenter, "no triangle center X" + std::to_string(k) + " in registry");
    }
    return it->second;
  }

  std::vector<std::pair<int, std::string>> listing() const {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& [k, fn] : functions_) out.emplace_back(k, fn.name);
    return out;
  }

 private:
  static CenterRegistry make_builtin() {
    using trig::angle;
    using trig::cos_angle;
    using trig::one_minus_cos_diff;
    CenterRegistry r;
    r.add({1, "Incenter", [](double, double, double) { return 1.0; }});
    r.add({2, "Centroid", [](double a, double, double) { return 1.0 / a; }});
    r.add({3, "Circumcenter", [](double a, double b, double c) { return cos_angle(a, b, c); }});
    // sec A scaled by cos A cos B cos C; finite for right triangles.
    r.add({4, "Orthocenter",
           [](double a, double b, double c) { return cos_angle(b, c, a) * cos_angle(c, a, b); }});
    r.add({5, "Nine-point center", [](double a, double b, double c) {
             return std::cos(angle(b, c, a) - angle(c, a, b));
           }});
    r.add({6, "Symmedian point", [](double a, double, double) { return a; }});
    // Barycentric 1/(b + c − a); the trilinear needs the extra 1/a.
    r.add({7, "Gergonne point", [](double a, double b, double c) { return 1.0 / (a * (b + c - a)); }});
    r.add({8, "Nagel point", [](double a, double b, double c) { return (b + c - a) / a; }});
    r.add({9, "Mittenpunkt", [](double a, double b, double c) { return b + c - a; }});
    r.add({10, "Spieker center", [](double a, double b, double c) { return (b + c) / a; }});
    r.add({11, "Feuerbach point", [](double a, double b, double c) {
             return one_minus_cos_diff(angle(b, c, a), angle(c, a, b));
           }});
    // 1/(1 − cos(B − C)) scaled by the product over all three sides.
    r.add({59, "Isogonal conjugate of X11", [](double a, double b, double c) {
             const double A = angle(a, b, c);
             const double B = angle(b, c, a);
             const double C = angle(c, a, b);
             return one_minus_cos_diff(C, A) * one_minus_cos_diff(A, B);
           }});
    return r;
  }

  std::map<int, CenterFunction> functions_;
};

inline std::array<double, 3> trilinears(const CenterFunction& fn, const SideLengths& s) {
  return {fn.first_trilinear(s.s1, s.s2, s.s3), fn.first_trilinear(s.s2, s.s3, s.s1),
          fn.first_trilinear(s.s3, s.s1, s.s2)};
}

/// Cartesian position of the center with trilinears (α:β:γ):
/// (α·s1·v1 + β·s2·v2 + γ·s3·v3) / (α·s1 + β·s2 + γ·s3).
///
/// A triple that vanishes identically (X11 and X59 on an equilateral
/// triangle) has no preferred direction; every center of such a triangle is
/// taken to coincide with the centroid. A nonzero triple whose weights sum
/// to zero is a point at infinity and raises CenterAtInfinity.
inline Point2 center_from_trilinears(const Triangle& t, const SideLengths& s,
                                     const std::array<double, 3>& tri) {
  const std::array<double, 3> w{tri[0] * s.s1, tri[1] * s.s2, tri[2] * s.s3};
  const double magnitude = std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]);
  if (!std::isfinite(magnitude)) {
    fail(ErrorCode::CenterAtInfinity, "trilinear weights are not finite");
  }
  if (magnitude <= 1e-20 * s.perimeter()) return centroid(t);
  const double normalizer = w[0] + w[1] + w[2];
  if (std::abs(normalizer) < 1e-14 * magnitude) {
    fail(ErrorCode::CenterAtInfinity, "trilinear normalizer vanishes");
  }
  return (w[0] * t.v1 + w[1] * t.v2 + w[2] * t.v3) / normalizer;
}

inline Point2 center_position(const Triangle& t, int k,
                              const CenterRegistry& registry = CenterRegistry::builtin()) {
  const CenterFunction& fn = registry.at(k);
  const SideLengths s = side_lengths(t);
  return center_from_trilinears(t, s, trilinears(fn, s));
}

enum class DerivedKind { reference, medial, orthic, excentral, intouch };

inline constexpr std::array<DerivedKind, 5> kAllDerivedKinds{
    DerivedKind::reference, DerivedKind::medial, DerivedKind::orthic, DerivedKind::excentral,
    DerivedKind::intouch};

constexpr std::string_view to_string(DerivedKind k) {
  switch (k) {
    case DerivedKind::reference: return "reference";
    case DerivedKind::medial: return "medial";
    case DerivedKind::orthic: return "orthic";
    case DerivedKind::excentral: return "excentral";
    case DerivedKind::intouch: return "intouch";
  }
  return "reference";
}

inline DerivedKind parse_derived_kind(std::string_view name) {
  for (DerivedKind k : kAllDerivedKinds) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown derived triangle '" + std::string(name) + "'");
}

namespace detail {

inline Point2 project_onto_line(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  return a + (dot(p - a, d) / dot(d, d)) * d;
}

}  // namespace detail

/// Triangle built from `t`: side midpoints, altitude feet, excenters or
/// incircle contact points. The result is reoriented counter-clockwise.
inline Triangle derived_triangle(const Triangle& t, DerivedKind kind) {
  Triangle out = t;
  switch (kind) {
    case DerivedKind::reference:
      break;
    case DerivedKind::medial:
      out = {(t.v2 + t.v3) / 2.0, (t.v3 + t.v1) / 2.0, (t.v1 + t.v2) / 2.0};
      break;
    case DerivedKind::orthic:
      out = {detail::project_onto_line(t.v1, t.v2, t.v3), detail::project_onto_line(t.v2, t.v3, t.v1),
             detail::project_onto_line(t.v3, t.v1, t.v2)};
      break;
    case DerivedKind::excentral: {
      const SideLengths s = side_lengths(t);
      out = {center_from_trilinears(t, s, {-1.0, 1.0, 1.0}),
             center_from_trilinears(t, s, {1.0, -1.0, 1.0}),
             center_from_trilinears(t, s, {1.0, 1.0, -1.0})};
      break;
    }
    case DerivedKind::intouch: {
      const SideLengths s = side_lengths(t);
      const Point2 incenter = center_from_trilinears(t, s, {1.0, 1.0, 1.0});
      out = {detail::project_onto_line(incenter, t.v2, t.v3),
             detail::project_onto_line(incenter, t.v3, t.v1),
             detail::project_onto_line(incenter, t.v1, t.v2)};
      break;
    }
  }
  if (is_degenerate(out) || !is_finite(out.v1) || !is_finite(out.v2) || !is_finite(out.v3)) {
    fail(ErrorCode::DegenerateDerived,
         std::string(to_string(kind)) + " triangle is degenerate");
  }
  return make_ccw(out);
}

}  // namespace poncelet
