#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poncelet/conic.hpp"

namespace poncelet {

struct Segment {
  Point2 a;
  Point2 b;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  double diagonal() const { return std::hypot(max_x - min_x, max_y - min_y); }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

inline BoundingBox bounding_box(std::span<const Point2> points) {
  BoundingBox box{points.front().x, points.front().y, points.front().x, points.front().y};
  for (Point2 p : points) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

/// Closed polyline p0 … pn−1 as n segments, the last one closing the loop.
inline std::vector<Segment> closed_segments(std::span<const Point2> points) {
  std::vector<Segment> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back({points[i], points[(i + 1) % points.size()]});
  }
  return out;
}

struct Crossing {
  double s = 0.0;  // parameter along the first segment
  double u = 0.0;  // parameter along the second segment
  Point2 point;
};

/// Intersection of the supporting lines of two non-parallel segments.
inline std::optional<Crossing> line_crossing(const Segment& p, const Segment& q) {
  const Point2 r = p.b - p.a;
  const Point2 w = q.b - q.a;
  const double den = cross(r, w);
  if (std::abs(den) <= 1e-15 * norm(r) * norm(w) || den == 0.0) return std::nullopt;
  const Point2 qp = q.a - p.a;
  const double s = cross(qp, w) / den;
  const double u = cross(qp, r) / den;
  return Crossing{s, u, p.a + s * r};
}

inline double point_segment_distance(Point2 p, const Segment& seg) {
  const Point2 d = seg.b - seg.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, seg.a);
  const double s = std::clamp(dot(p - seg.a, d) / len2, 0.0, 1.0);
  return distance(p, seg.a + s * d);
}

/// Uniform-grid broad phase: index pairs (i < j) of segments whose padded
/// bounding boxes share a grid cell, sorted and unique.
inline std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(std::span<const Segment> segs,
                                                                        double pad) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (segs.size() < 2) return pairs;
  std::vector<Point2> ends;
  ends.reserve(2 * segs.size());
  for (const Segment& s : segs) ends.insert(ends.end(), {s.a, s.b});
  const BoundingBox box = bounding_box(ends);
  const double extent = std::max({box.width(), box.height(), pad, 1e-300});
  const auto cells_per_side = static_cast<std::int64_t>(
      std::clamp(std::sqrt(static_cast<double>(segs.size())), 1.0, 1024.0));
  const double cell = extent / static_cast<double>(cells_per_side) * (1.0 + 1e-9);

  auto cell_of = [&](double v, double origin) {
    return static_cast<std::int64_t>(std::floor((v - origin) / cell));
  };
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    const std::int64_t x0 = cell_of(std::min(s.a.x, s.b.x) - pad, box.min_x);
    const std::int64_t x1 = cell_of(std::max(s.a.x, s.b.x) + pad, box.min_x);
    const std::int64_t y0 = cell_of(std::min(s.a.y, s.b.y) - pad, box.min_y);
    const std::int64_t y1 = cell_of(std::max(s.a.y, s.b.y) + pad, box.min_y);
    for (std::int64_t cx = x0; cx <= x1; ++cx) {
      for (std::int64_t cy = y0; cy <= y1; ++cy) {
        grid[(cx + 2) * 4099 + (cy + 2)].push_back(i);
      }
    }
  }
  for (auto& [key, members] : grid) {
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t n = m + 1; n < members.size(); ++n) {
        pairs.emplace_back(std::min(members[m], members[n]), std::max(members[m], members[n]));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace poncelet
