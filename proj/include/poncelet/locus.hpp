#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poncelet/centers.hpp"
#include "poncelet/error.hpp"
#include "poncelet/family.hpp"
#include "poncelet/fit.hpp"
#include "poncelet/intersect.hpp"

namespace poncelet {

inline constexpr double kEllipseTol = 1e-7;
inline constexpr double kStationaryTol = 1e-7;
inline constexpr double kSegmentTol = 1e-9;
inline constexpr int kDefaultSamples = 720;
inline constexpr int kMinSamples = 16;

/// What a locus follows: a registry center or one vertex (1–3).
struct Target {
  enum class Kind { center, vertex };
  Kind kind = Kind::center;
  int index = 1;

  static Target center(int k) { return {Kind::center, k}; }
  static Target vertex(int i) { return {Kind::vertex, i}; }

  friend bool operator==(const Target&, const Target&) = default;
};

struct LocusRequest {
  FamilySpec family;
  Target target = Target::center(1);
  DerivedKind derived = DerivedKind::reference;
  int samples = kDefaultSamples;
};

enum class LocusKind { stationary, segment, circle, ellipse, nonconic };

constexpr std::string_view to_string(LocusKind k) {
  switch (k) {
    case LocusKind::stationary: return "stationary";
    case LocusKind::segment: return "segment";
    case LocusKind::circle: return "circle";
    case LocusKind::ellipse: return "ellipse";
    case LocusKind::nonconic: return "nonconic";
  }
  return "nonconic";
}

struct Classification {
  LocusKind kind = LocusKind::nonconic;
  double conic_residual = 0.0;
  double quartic_residual = 0.0;
  int self_intersections = 0;
  std::optional<ConicCoefficients> conic_coefficients;
};

struct Locus {
  std::vector<Point2> points;   // closed: the last point connects to the first
  std::vector<double> params;   // family parameter of each point (class parameter for centers)
  Classification classification;
  double scale = 0.0;           // bounding-box diagonal
  int dropped_samples = 0;
};

struct SelfIntersection {
  Point2 point;
  std::pair<std::size_t, std::size_t> segments;
};

/// Transverse crossings between non-adjacent segments of a closed polyline.
/// Segments are half-open [a, b) so a crossing exactly at a shared polyline
/// vertex is found once; hits within 1e−9 of the bbox diagonal collapse.
inline std::vector<SelfIntersection> self_intersections(std::span<const Point2> points) {
  std::vector<SelfIntersection> out;
  if (points.size() < 4) return out;
  const std::vector<Segment> segs = closed_segments(points);
  const std::size_t n = segs.size();
  const double merge = 1e-9 * bounding_box(points).diagonal();

  for (const auto& [i, j] : candidate_pairs(segs, 0.0)) {
    if (j == i + 1 || (i == 0 && j == n - 1)) continue;
    const auto hit = line_crossing(segs[i], segs[j]);
    if (!hit || hit->s < 0.0 || hit->s >= 1.0 || hit->u < 0.0 || hit->u >= 1.0) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const SelfIntersection& x) {
      return distance(x.point, hit->point) <= merge;
    });
    if (!duplicate) out.push_back({hit->point, {i, j}});
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& x, const SelfIntersection& y) {
    return x.segments < y.segments;
  });
  return out;
}

/// Symmetric Hausdorff distance between two closed polylines, measuring each
/// vertex of one against the segments of the other.
inline double hausdorff_distance(std::span<const Point2> lhs, std::span<const Point2> rhs) {
  if (lhs.empty() || rhs.empty()) fail(ErrorCode::InvalidArgument, "hausdorff distance of an empty set");
  auto directed = [](std::span<const Point2> from, std::span<const Point2> to) {
    const std::vector<Segment> segs =
        to.size() == 1 ? std::vector<Segment>{{to[0], to[0]}} : closed_segments(to);
    double worst = 0.0;
    for (Point2 p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Segment& s : segs) best = std::min(best, point_segment_distance(p, s));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(lhs, rhs), directed(rhs, lhs));
}

/// Decision ladder: stationary, segment, circle/ellipse by conic fit, else
/// nonconic. `reference_scale` is the family size used for the stationary
/// test; when absent the extent of the points themselves is used.
inline Classification classify_locus(std::span<const Point2> points,
                                     std::optional<double> reference_scale = std::nullopt) {
  if (points.size() < static_cast<std::size_t>(kMinSamples)) {
    fail(ErrorCode::InsufficientPoints, "classification needs at least 16 points");
  }
  Classification c;
  const double diag = bounding_box(points).diagonal();
  double ref = 0.0;
  if (reference_scale) {
    ref = *reference_scale;
  } else {
    for (Point2 p : points) ref = std::max(ref, norm(p));
    ref = std::max(ref, diag);
  }
  if (diag <= kStationaryTol * ref) {
    c.kind = LocusKind::stationary;
    return c;
  }

  c.self_intersections = static_cast<int>(self_intersections(points).size());
  if (line_fit(points).rms < kSegmentTol * diag) {
    c.kind = LocusKind::segment;
    return c;
  }

  const ConicFit conic = conic_fit(points);
  c.conic_residual = conic.residual;
  c.quartic_residual = quartic_fit(points);
  c.kind = LocusKind::nonconic;
  if (conic.residual < kEllipseTol && conic_discriminant(conic.coefficients) < 0.0) {
    c.conic_coefficients = conic.coefficients;
    const auto& k = conic.coefficients;  // unit norm
    const bool round = std::abs(k[0] - k[2]) < kEllipseTol && std::abs(k[1]) < kEllipseTol;
    c.kind = round ? LocusKind::circle : LocusKind::ellipse;
  }
  return c;
}

namespace detail {

inline Point2 target_point(const Triangle& tri, const Target& target) {
  if (target.kind == Target::Kind::vertex) return tri[target.index - 1];
  return center_position(tri, target.index);
}

}  // namespace detail

inline void validate(const LocusRequest& req) {
  if (req.samples < kMinSamples) fail(ErrorCode::OutOfRange, "samples must be at least 16");
  if (req.target.kind == Target::Kind::vertex) {
    if (req.target.index < 1 || req.target.index > 3) fail(ErrorCode::OutOfRange, "vertex must be 1, 2 or 3");
  } else if (!CenterRegistry::builtin().contains(req.target.index)) {
    fail(ErrorCode::UnknownCenter, "no triangle center X" + std::to_string(req.target.index) + " in registry");
  }
}

/// Samples the tracked point at t_i = 2πi/samples. A center depends only on
/// the triangle, which recurs three times per turn, so center samples are
/// re-ordered by the triangle's class parameter and repeats are merged: the
/// locus is traced once and the sample set is closed under both axis
/// reflections. Samples whose derived triangle or center is undefined are
/// dropped and counted.
inline Locus sweep_locus(const LocusRequest& req) {
  validate(req);
  constexpr double turn = 2.0 * std::numbers::pi;
  const bool by_class = req.target.kind == Target::Kind::center;
  std::vector<std::pair<double, Point2>> samples;
  samples.reserve(static_cast<std::size_t>(req.samples));
  Locus locus;
  for (int i = 0; i < req.samples; ++i) {
    const double t = turn * i / req.samples;
    try {
      const Triangle tri = derived_triangle(triangle_at(req.family, t), req.derived);
      const Point2 p = detail::target_point(tri, req.target);
      if (!is_finite(p)) throw Error(ErrorCode::CenterAtInfinity, "non-finite point");
      samples.emplace_back(by_class ? class_parameter(req.family, t) : t, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateDerived && e.code() != ErrorCode::CenterAtInfinity &&
          e.code() != ErrorCode::DegenerateTriangle) {
        throw;
      }
      ++locus.dropped_samples;
    }
  }
  if (by_class && !samples.empty()) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    const double period = fundamental_period(req.family);
    const double same = 1e-9 * period;
    std::vector<std::pair<double, Point2>> merged{samples.front()};
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].first - merged.back().first > same) merged.push_back(samples[i]);
    }
    // The class at the top of the period is the one at zero.
    if (merged.size() > 1 && merged.front().first + period - merged.back().first <= same) merged.pop_back();
    samples = std::move(merged);
  }
  for (const auto& [t, p] : samples) {
    locus.params.push_back(t);
    locus.points.push_back(p);
  }
  if (locus.points.empty()) fail(ErrorCode::AllSamplesDegenerate, "every sample was degenerate");
  locus.scale = bounding_box(locus.points).diagonal();
  if (locus.points.size() >= static_cast<std::size_t>(kMinSamples)) {
    locus.classification = classify_locus(locus.points, req.family.scale());
  } else {
    locus.classification.kind = LocusKind::nonconic;
  }
  return locus;
}

}  // namespace poncelet
