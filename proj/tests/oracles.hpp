#pragma once

// Test-only reference computations. Nothing here calls into the engine's
// geometry; each oracle uses a different textbook construction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "poncelet/conic.hpp"
#include "poncelet/triangle.hpp"

namespace oracle {

using poncelet::Point2;
using poncelet::Triangle;

inline constexpr double kPi = std::numbers::pi;

/// Distance from the origin to the line through p and q.
inline double origin_line_distance(Point2 p, Point2 q) {
  return std::abs(p.x * q.y - p.y * q.x) / std::hypot(q.x - p.x, q.y - p.y);
}

/// Pole-polar tangency test for the axis-aligned ellipse x²/a² + y²/b² = 1:
/// the line through p and q is tangent iff a²l² + b²m² = n² with l, m, n
/// taken straight from the two-point form and normalized by |(l, m)|.
inline double tangency_defect(double a, double b, Point2 p, Point2 q) {
  const double l = p.y - q.y, m = q.x - p.x, n = p.x * q.y - q.x * p.y;
  const double s = l * l + m * m;
  return std::abs(a * a * l * l + b * b * m * m - n * n) / s;
}

/// Confocal caustic in the textbook closed form (a ≠ b).
inline std::pair<double, double> confocal_caustic(double a, double b) {
  const double d = std::sqrt(a * a * a * a - a * a * b * b + b * b * b * b);
  return {a * (d - b * b) / (a * a - b * b), b * (a * a - d) / (a * a - b * b)};
}

inline double side(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline Point2 incenter(const Triangle& t) {
  const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
  return (t.v1 * a + t.v2 * b + t.v3 * c) / (a + b + c);
}

inline double inradius(const Triangle& t) {
  const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
  const double area = std::abs(poncelet::signed_area(t));
  return 2.0 * area / (a + b + c);
}

/// Intersection of two perpendicular bisectors.
inline Point2 circumcenter(const Triangle& t) {
  const Point2 a = t.v1, b = t.v2, c = t.v3;
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y, c2 = c.x * c.x + c.y * c.y;
  return {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
          (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

/// Intersection of two altitudes.
inline Point2 orthocenter(const Triangle& t) {
  const Point2 a = t.v1, b = t.v2, c = t.v3;
  // Altitude from a: (p − a)·(c − b) = 0; from b: (p − b)·(a − c) = 0.
  const Point2 u = c - b, v = a - c;
  const double r1 = poncelet::dot(a, u), r2 = poncelet::dot(b, v);
  const double det = u.x * v.y - u.y * v.x;
  return {(r1 * v.y - r2 * u.y) / det, (u.x * r2 - v.x * r1) / det};
}

/// Barycentric weights a², b², c².
inline Point2 symmedian(const Triangle& t) {
  const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
  return (t.v1 * (a * a) + t.v2 * (b * b) + t.v3 * (c * c)) / (a * a + b * b + c * c);
}

/// Barycentric weights a(b + c − a).
inline Point2 mittenpunkt(const Triangle& t) {
  const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
  const double wa = a * (b + c - a), wb = b * (c + a - b), wc = c * (a + b - c);
  return (t.v1 * wa + t.v2 * wb + t.v3 * wc) / (wa + wb + wc);
}

/// Feuerbach point: where the nine-point circle touches the incircle, on the
/// ray from the nine-point center through the incenter.
inline Point2 feuerbach(const Triangle& t) {
  const Point2 o = circumcenter(t), h = orthocenter(t);
  const Point2 n = (o + h) * 0.5;
  const double half_r = 0.5 * side(o, t.v1);
  const Point2 i = incenter(t);
  return n + (i - n) * (half_r / side(i, n));
}

inline Triangle excentral(const Triangle& t) {
  const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
  return {(t.v1 * -a + t.v2 * b + t.v3 * c) / (-a + b + c), (t.v1 * a + t.v2 * -b + t.v3 * c) / (a - b + c),
          (t.v1 * a + t.v2 * b + t.v3 * -c) / (a + b - c)};
}

/// Foot of the perpendicular from p to line qr.
inline Point2 foot(Point2 p, Point2 q, Point2 r) {
  const Point2 d = r - q;
  return q + d * (poncelet::dot(p - q, d) / poncelet::dot(d, d));
}

inline std::vector<Point2> ellipse_samples(double a, double b, int n, double phase = 0.0) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2.0 * kPi * i / n;
    out.push_back({a * std::cos(t), b * std::sin(t)});
  }
  return out;
}

/// Lemniscate-like figure eight with a single crossing at the origin.
inline std::vector<Point2> figure_eight(int n) {
  std::vector<Point2> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * (i + 0.5) / n;
    out.push_back({std::sin(t), std::sin(t) * std::cos(t)});
  }
  return out;
}

/// Crossing-number parity over every closed polyline.
inline bool even_odd_inside(Point2 p, const std::vector<std::vector<Point2>>& curves) {
  bool inside = false;
  for (const auto& c : curves) {
    for (std::size_t i = 0, j = c.size() - 1; i < c.size(); j = i++) {
      const Point2 a = c[i], b = c[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)) inside = !inside;
    }
  }
  return inside;
}

/// Monte Carlo even-odd filled area from `n` uniform points in the bbox.
inline double monte_carlo_area(const std::vector<std::vector<Point2>>& curves, int n, std::uint64_t seed) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& c : curves) {
    for (Point2 p : c) {
      x0 = std::min(x0, p.x), y0 = std::min(y0, p.y), x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
    }
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += even_odd_inside({ux(gen), uy(gen)}, curves) ? 1 : 0;
  return (x1 - x0) * (y1 - y0) * hits / n;
}

/// O(n²) proper crossings between non-adjacent segments of a closed polyline.
inline int brute_force_crossings(const std::vector<Point2>& pts) {
  const std::size_t n = pts.size();
  auto orient = [](Point2 a, Point2 b, Point2 c) { return poncelet::cross(b - a, c - a); };
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Point2 a = pts[i], b = pts[(i + 1) % n], c = pts[j], d = pts[(j + 1) % n];
      const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) ++count;
    }
  }
  return count;
}

/// Random triangle with every angle at least `min_angle` radians.
inline Triangle random_triangle(std::mt19937_64& gen, double min_angle = 10.0 * kPi / 180.0) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (;;) {
    Triangle t{{u(gen), u(gen)}, {u(gen), u(gen)}, {u(gen), u(gen)}};
    const double a = side(t.v2, t.v3), b = side(t.v3, t.v1), c = side(t.v1, t.v2);
    const double A = std::acos(std::clamp((b * b + c * c - a * a) / (2 * b * c), -1.0, 1.0));
    const double B = std::acos(std::clamp((c * c + a * a - b * b) / (2 * c * a), -1.0, 1.0));
    const double C = kPi - A - B;
    if (std::min({A, B, C}) >= min_angle) return poncelet::make_ccw(t);
  }
}

}  // namespace oracle
