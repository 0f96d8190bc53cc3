#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "poncelet/error.hpp"

namespace poncelet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 p, Point2 q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Point2 operator-(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Point2 operator-(Point2 p) { return {-p.x, -p.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 p, Point2 q) { return p.x * q.x + p.y * q.y; }
constexpr double cross(Point2 p, Point2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 p, Point2 q) { return norm(p - q); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Centered, axis-aligned ellipse x²/a² + y²/b² = 1.
class Ellipse {
 public:
  Ellipse(double semi_axis_x, double semi_axis_y) : a_(semi_axis_x), b_(semi_axis_y) {
    if (!(a_ > 0.0) || !(b_ > 0.0) || !std::isfinite(a_) || !std::isfinite(b_)) {
      fail(ErrorCode::InvalidArgument, "ellipse semi-axes must be finite and positive");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double scale() const noexcept { return std::max(a_, b_); }

  friend bool operator==(const Ellipse&, const Ellipse&) = default;

 private:
  double a_;
  double b_;
};

/// Line l·x + m·y + n = 0, stored with l² + m² = 1 and the first nonzero of
/// (l, m) positive.
class Line2 {
 public:
  Line2(double l, double m, double n) {
    const double len = std::hypot(l, m);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(n)) {
      fail(ErrorCode::InvalidArgument, "line normal must be finite and nonzero");
    }
    l /= len;
    m /= len;
    n /= len;
    const double lead = (l != 0.0) ? l : m;
    if (lead < 0.0) {
      l = -l;
      m = -m;
      n = -n;
    }
    l_ = l;
    m_ = m;
    n_ = n + 0.0;
  }

  static Line2 through(Point2 p, Point2 q) {
    const Point2 d = q - p;
    return Line2(-d.y, d.x, cross(d, p));
  }

  double l() const noexcept { return l_; }
  double m() const noexcept { return m_; }
  double n() const noexcept { return n_; }

  double evaluate(Point2 p) const noexcept { return l_ * p.x + m_ * p.y + n_; }

 private:
  double l_ = 1.0;
  double m_ = 0.0;
  double n_ = 0.0;
};

inline constexpr double kToleranceInside = 1e-12;
inline constexpr double kDiscriminantTol = 1e-10;

inline Point2 point_at(const Ellipse& e, double t) {
  return {e.a() * std::cos(t), e.b() * std::sin(t)};
}

/// x²/a² + y²/b² − 1; zero on the boundary, negative inside.
inline double boundary_residual(const Ellipse& e, Point2 p) {
  const double u = p.x / e.a();
  const double v = p.y / e.b();
  return u * u + v * v - 1.0;
}

/// Angle of p in the ellipse's own parameterization, in [0, 2π).
inline double parameter_angle(const Ellipse& e, Point2 p) {
  double t = std::atan2(p.y / e.b(), p.x / e.a());
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

inline double tangency_residual(const Ellipse& e, const Line2& line) {
  const double al = e.a() * line.l();
  const double bm = e.b() * line.m();
  return std::abs(al * al + bm * bm - line.n() * line.n());
}

/// Tangent line at the boundary point with parameter angle t.
inline Line2 tangent_at(const Ellipse& e, double t) {
  return Line2(std::cos(t) / e.a(), std::sin(t) / e.b(), -1.0);
}

struct Tangent {
  Line2 line;
  Point2 point;  // where the line touches the ellipse
};

/// The two tangents from an exterior point, ordered by the polar angle of
/// their tangency points in [0, 2π). A point on the boundary yields its own
/// tangent twice.
inline std::array<Tangent, 2> tangents_from(const Ellipse& e, Point2 p) {
  const double residual = boundary_residual(e, p);
  if (std::abs(residual) <= kToleranceInside) {
    const double t = parameter_angle(e, p);
    const Tangent tangent{tangent_at(e, t), p};
    return {tangent, tangent};
  }
  if (residual < 0.0) {
    fail(ErrorCode::PointInsideConic, "point lies inside the conic");
  }
  // In the frame where e is the unit circle the tangency points sit at
  // polar angle φ ± acos(1/|q|).
  const Point2 q{p.x / e.a(), p.y / e.b()};
  const double phi = std::atan2(q.y, q.x);
  const double spread = std::acos(1.0 / norm(q));
  std::array<Tangent, 2> out{
      Tangent{tangent_at(e, phi - spread), point_at(e, phi - spread)},
      Tangent{tangent_at(e, phi + spread), point_at(e, phi + spread)},
  };
  auto polar = [](Point2 v) {
    double a = std::atan2(v.y, v.x);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
  };
  if (polar(out[1].point) < polar(out[0].point)) std::swap(out[0], out[1]);
  return out;
}

/// Real intersections of a line with the ellipse, sorted by parameter angle
/// in [−π, π). A tangent line reports its single touching point.
inline std::vector<Point2> line_ellipse_intersections(const Ellipse& e, const Line2& line) {
  const Point2 foot{-line.n() * line.l(), -line.n() * line.m()};
  const Point2 dir{-line.m(), line.l()};
  const double ia2 = 1.0 / (e.a() * e.a());
  const double ib2 = 1.0 / (e.b() * e.b());
  const double qa = dir.x * dir.x * ia2 + dir.y * dir.y * ib2;
  const double qb = 2.0 * (foot.x * dir.x * ia2 + foot.y * dir.y * ib2);
  const double qc = foot.x * foot.x * ia2 + foot.y * foot.y * ib2 - 1.0;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double disc_scale = qb * qb + std::abs(4.0 * qa * qc);

  std::vector<Point2> out;
  if (std::abs(disc) <= kDiscriminantTol * disc_scale) {
    out.push_back(foot + (-qb / (2.0 * qa)) * dir);
    return out;
  }
  if (disc < 0.0) return out;
  const double root = std::sqrt(disc);
  // Stable pairing of the two roots.
  const double qq = -0.5 * (qb + std::copysign(root, qb));
  const double s1 = qq / qa;
  const double s2 = (qq != 0.0) ? qc / qq : -s1;
  out.push_back(foot + s1 * dir);
  out.push_back(foot + s2 * dir);
  auto angle = [&](Point2 p) {
    double t = std::atan2(p.y / e.b(), p.x / e.a());
    return t >= std::numbers::pi ? t - 2.0 * std::numbers::pi : t;
  };
  std::sort(out.begin(), out.end(), [&](Point2 u, Point2 v) { return angle(u) < angle(v); });
  return out;
}

}  // namespace poncelet
