#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "poncelet/conic.hpp"

namespace poncelet {

struct Triangle {
  Point2 v1;
  Point2 v2;
  Point2 v3;

  std::array<Point2, 3> vertices() const { return {v1, v2, v3}; }
  Point2 operator[](int i) const { return i == 0 ? v1 : (i == 1 ? v2 : v3); }
};

inline double signed_area(const Triangle& t) {
  return 0.5 * cross(t.v2 - t.v1, t.v3 - t.v1);
}

/// Square of the bounding-box diagonal; the reference for degeneracy tests.
inline double bbox_diagonal_sq(const Triangle& t) {
  const double w = std::max({t.v1.x, t.v2.x, t.v3.x}) - std::min({t.v1.x, t.v2.x, t.v3.x});
  const double h = std::max({t.v1.y, t.v2.y, t.v3.y}) - std::min({t.v1.y, t.v2.y, t.v3.y});
  return w * w + h * h;
}

inline bool is_degenerate(const Triangle& t) {
  return !(std::abs(signed_area(t)) > 1e-14 * bbox_diagonal_sq(t));
}

inline Triangle make_ccw(Triangle t) {
  if (signed_area(t) < 0.0) std::swap(t.v2, t.v3);
  return t;
}

inline Point2 centroid(const Triangle& t) { return (t.v1 + t.v2 + t.v3) / 3.0; }

}  // namespace poncelet
