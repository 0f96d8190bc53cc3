#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poncelet/conic.hpp"
#include "poncelet/error.hpp"
#include "poncelet/intersect.hpp"

namespace poncelet {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct HalfEdge {
  std::size_t origin = kNone;
  std::size_t twin = kNone;
  std::size_t next = kNone;
  std::size_t face = kNone;
};

/// One boundary cycle of the subdivision. Bounded faces run counter-clockwise;
/// an outer face is the clockwise hull of one connected component.
struct Face {
  std::vector<std::size_t> boundary;  // vertex indices in walking order
  bool is_outer = false;
  double area = 0.0;           // net area (holes removed); 0 for outer faces
  double enclosed_area = 0.0;  // area inside the boundary loop
  std::size_t component = 0;
};

struct Arrangement {
  std::vector<Point2> vertices;
  std::vector<HalfEdge> half_edges;
  std::vector<Face> faces;
  std::size_t components = 0;

  std::size_t edge_count() const { return half_edges.size() / 2; }

  std::size_t bounded_face_count() const {
    return static_cast<std::size_t>(
        std::count_if(faces.begin(), faces.end(), [](const Face& f) { return !f.is_outer; }));
  }

  std::vector<Segment> edges() const {
    std::vector<Segment> out;
    out.reserve(edge_count());
    for (std::size_t h = 0; h < half_edges.size(); h += 2) {
      out.push_back({vertices[half_edges[h].origin], vertices[half_edges[h + 1].origin]});
    }
    return out;
  }

  std::vector<Point2> loop(std::size_t face) const {
    std::vector<Point2> out;
    out.reserve(faces[face].boundary.size());
    for (std::size_t v : faces[face].boundary) out.push_back(vertices[v]);
    return out;
  }
};

inline double polygon_signed_area(std::span<const Point2> loop) {
  double twice = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    twice += cross(loop[i], loop[(i + 1) % loop.size()]);
  }
  return 0.5 * twice;
}

/// Even-odd ray cast along +x.
inline bool point_in_polygon(Point2 p, std::span<const Point2> loop) {
  bool inside = false;
  for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
    const Point2 a = loop[i], b = loop[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

/// V − E + F = 1 + C, counting one unbounded face for the whole plane.
inline bool satisfies_euler(const Arrangement& arr) {
  const auto v = static_cast<std::int64_t>(arr.vertices.size());
  const auto e = static_cast<std::int64_t>(arr.edge_count());
  const auto f = static_cast<std::int64_t>(arr.bounded_face_count()) + 1;
  return v - e + f == 1 + static_cast<std::int64_t>(arr.components);
}

/// For every face, the smallest bounded face of another component that
/// encloses it, or nothing when it lies in the unbounded region. Faces of a
/// component share a parent, found by ray-casting one of its vertices.
inline std::vector<std::optional<std::size_t>> face_containment(const Arrangement& arr) {
  std::vector<std::size_t> sample_vertex(arr.components, kNone);
  for (const Face& f : arr.faces) {
    if (sample_vertex[f.component] == kNone) sample_vertex[f.component] = f.boundary.front();
  }
  std::vector<std::vector<Point2>> loops;
  loops.reserve(arr.faces.size());
  for (std::size_t f = 0; f < arr.faces.size(); ++f) loops.push_back(arr.loop(f));

  std::vector<std::optional<std::size_t>> container(arr.components);
  for (std::size_t c = 0; c < arr.components; ++c) {
    const Point2 probe = arr.vertices[sample_vertex[c]];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
      const Face& face = arr.faces[f];
      if (face.is_outer || face.component == c || face.enclosed_area >= best) continue;
      if (point_in_polygon(probe, loops[f])) {
        best = face.enclosed_area;
        container[c] = f;
      }
    }
  }
  std::vector<std::optional<std::size_t>> parents;
  parents.reserve(arr.faces.size());
  for (const Face& f : arr.faces) parents.push_back(container[f.component]);
  return parents;
}

namespace detail {

/// Merges points closer than `tol` into shared vertex ids.
class VertexWelder {
 public:
  explicit VertexWelder(double tol) : tol_(tol), cell_(2.0 * tol) {}

  std::size_t insert(Point2 p) {
    const std::int64_t cx = key(p.x), cy = key(p.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = grid_.find({cx + dx, cy + dy});
        if (it == grid_.end()) continue;
        for (std::size_t id : it->second) {
          if (distance(points_[id], p) <= tol_) return id;
        }
      }
    }
    points_.push_back(p);
    grid_[{cx, cy}].push_back(points_.size() - 1);
    return points_.size() - 1;
  }

  const std::vector<Point2>& points() const { return points_; }

 private:
  std::int64_t key(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }

  double tol_;
  double cell_;
  std::vector<Point2> points_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> grid_;
};

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

/// Nodes every crossing (and every endpoint lying on another segment),
/// welds vertices within 1e−9 of the input extent, and extracts faces from
/// the resulting half-edge structure.
inline Arrangement build_arrangement_from_segments(std::span<const Segment> input) {
  std::vector<Segment> segs;
  for (const Segment& s : input) {
    if (!is_finite(s.a) || !is_finite(s.b)) fail(ErrorCode::InvalidArgument, "non-finite segment");
    if (!(s.a == s.b)) segs.push_back(s);
  }
  Arrangement arr;
  if (segs.empty()) return arr;

  std::vector<Point2> ends;
  for (const Segment& s : segs) ends.insert(ends.end(), {s.a, s.b});
  const double extent = bounding_box(ends).diagonal();
  if (!(extent > 0.0)) return arr;
  const double tol = 1e-9 * extent;

  // Split parameters per segment.
  std::vector<std::vector<double>> splits(segs.size(), std::vector<double>{0.0, 1.0});
  auto project = [](Point2 p, const Segment& s) {
    const Point2 d = s.b - s.a;
    return std::clamp(dot(p - s.a, d) / dot(d, d), 0.0, 1.0);
  };
  for (const auto& [i, j] : candidate_pairs(segs, tol)) {
    const Segment& p = segs[i];
    const Segment& q = segs[j];
    if (const auto hit = line_crossing(p, q)) {
      const double ep = tol / distance(p.a, p.b);
      const double eq = tol / distance(q.a, q.b);
      if (hit->s >= -ep && hit->s <= 1.0 + ep && hit->u >= -eq && hit->u <= 1.0 + eq) {
        splits[i].push_back(std::clamp(hit->s, 0.0, 1.0));
        splits[j].push_back(std::clamp(hit->u, 0.0, 1.0));
      }
    }
    for (Point2 e : {q.a, q.b}) {
      if (point_segment_distance(e, p) <= tol) splits[i].push_back(project(e, p));
    }
    for (Point2 e : {p.a, p.b}) {
      if (point_segment_distance(e, q) <= tol) splits[j].push_back(project(e, q));
    }
  }

  detail::VertexWelder welder(tol);
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto& ss = splits[i];
    std::sort(ss.begin(), ss.end());
    std::size_t prev = kNone;
    for (double s : ss) {
      const Point2 p = s == 0.0 ? segs[i].a : (s == 1.0 ? segs[i].b : segs[i].a + s * (segs[i].b - segs[i].a));
      const std::size_t id = welder.insert(p);
      if (prev != kNone && prev != id) edge_set.insert({std::min(prev, id), std::max(prev, id)});
      prev = id;
    }
  }

  // Keep only vertices that carry an edge, in first-use order.
  std::vector<std::size_t> remap(welder.points().size(), kNone);
  for (const auto& [u, v] : edge_set) {
    for (std::size_t w : {u, v}) {
      if (remap[w] == kNone) {
        remap[w] = arr.vertices.size();
        arr.vertices.push_back(welder.points()[w]);
      }
    }
  }

  arr.half_edges.reserve(2 * edge_set.size());
  for (const auto& [u, v] : edge_set) {
    const std::size_t h = arr.half_edges.size();
    arr.half_edges.push_back({remap[u], h + 1, kNone, kNone});
    arr.half_edges.push_back({remap[v], h, kNone, kNone});
  }

  // Outgoing half-edges around each vertex, counter-clockwise by angle.
  std::vector<std::vector<std::size_t>> outgoing(arr.vertices.size());
  for (std::size_t h = 0; h < arr.half_edges.size(); ++h) outgoing[arr.half_edges[h].origin].push_back(h);
  std::vector<std::size_t> slot(arr.half_edges.size());
  for (auto& fan : outgoing) {
    auto angle = [&](std::size_t h) {
      const Point2 d = arr.vertices[arr.half_edges[arr.half_edges[h].twin].origin] -
                       arr.vertices[arr.half_edges[h].origin];
      return std::atan2(d.y, d.x);
    };
    std::sort(fan.begin(), fan.end(), [&](std::size_t a, std::size_t b) { return angle(a) < angle(b); });
    for (std::size_t k = 0; k < fan.size(); ++k) slot[fan[k]] = k;
  }
  // The face stays on the left: after arriving at v, turn to the outgoing
  // edge just clockwise of the way back.
  for (std::size_t h = 0; h < arr.half_edges.size(); ++h) {
    const std::size_t back = arr.half_edges[h].twin;
    const auto& fan = outgoing[arr.half_edges[back].origin];
    arr.half_edges[h].next = fan[(slot[back] + fan.size() - 1) % fan.size()];
  }

  // Connected components.
  std::vector<std::size_t> uf(arr.vertices.size());
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  for (std::size_t h = 0; h < arr.half_edges.size(); h += 2) {
    const std::size_t a = detail::find_root(uf, arr.half_edges[h].origin);
    const std::size_t b = detail::find_root(uf, arr.half_edges[h + 1].origin);
    if (a != b) uf[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> component_of(arr.vertices.size(), kNone);
  std::vector<std::size_t> root_to_component(arr.vertices.size(), kNone);
  for (std::size_t v = 0; v < arr.vertices.size(); ++v) {
    const std::size_t r = detail::find_root(uf, v);
    if (root_to_component[r] == kNone) root_to_component[r] = arr.components++;
    component_of[v] = root_to_component[r];
  }

  // Boundary cycles.
  std::vector<double> signed_areas;
  for (std::size_t start = 0; start < arr.half_edges.size(); ++start) {
    if (arr.half_edges[start].face != kNone) continue;
    Face face;
    const std::size_t id = arr.faces.size();
    std::size_t h = start;
    do {
      arr.half_edges[h].face = id;
      face.boundary.push_back(arr.half_edges[h].origin);
      h = arr.half_edges[h].next;
    } while (h != start);
    face.component = component_of[face.boundary.front()];
    const std::vector<Point2> pts = [&] {
      std::vector<Point2> out;
      for (std::size_t v : face.boundary) out.push_back(arr.vertices[v]);
      return out;
    }();
    signed_areas.push_back(polygon_signed_area(pts));
    arr.faces.push_back(std::move(face));
  }
  // The most negative cycle of each component is its outer boundary.
  std::vector<std::size_t> outer_of(arr.components, kNone);
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    std::size_t& o = outer_of[arr.faces[f].component];
    if (o == kNone || signed_areas[f] < signed_areas[o]) o = f;
  }
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    Face& face = arr.faces[f];
    face.is_outer = outer_of[face.component] == f;
    face.enclosed_area = std::abs(signed_areas[f]);
    face.area = face.is_outer ? 0.0 : face.enclosed_area;
  }

  // Remove the hulls of directly nested components from their container.
  const auto parents = face_containment(arr);
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    if (arr.faces[f].is_outer && parents[f]) arr.faces[*parents[f]].area -= arr.faces[f].enclosed_area;
  }
  return arr;
}

inline Arrangement build_arrangement(const std::vector<std::vector<Point2>>& curves) {
  std::vector<Segment> segs;
  for (const auto& curve : curves) {
    if (curve.size() < 3) fail(ErrorCode::InvalidArgument, "closed curves need at least 3 points");
    for (Point2 p : curve) {
      if (!is_finite(p)) fail(ErrorCode::InvalidArgument, "curve contains a non-finite point");
    }
    const auto closed = closed_segments(curve);
    segs.insert(segs.end(), closed.begin(), closed.end());
  }
  return build_arrangement_from_segments(segs);
}

/// Outer boundaries of the components nested directly inside `face`.
inline std::vector<std::size_t> holes_of(const Arrangement& arr,
                                         const std::vector<std::optional<std::size_t>>& parents,
                                         std::size_t face) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    if (arr.faces[f].is_outer && parents[f] == face) out.push_back(f);
  }
  return out;
}

}  // namespace poncelet
