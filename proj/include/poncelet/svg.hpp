#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/arrangement.hpp"
#include "poncelet/error.hpp"
#include "poncelet/family.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/palette.hpp"

namespace poncelet {

enum class StyleMode { wireframe, dark_thick, region_fill };

inline constexpr std::array<StyleMode, 3> kAllStyleModes{StyleMode::wireframe, StyleMode::dark_thick,
                                                         StyleMode::region_fill};

constexpr std::string_view to_string(StyleMode m) {
  switch (m) {
    case StyleMode::wireframe: return "wireframe";
    case StyleMode::dark_thick: return "dark_thick";
    case StyleMode::region_fill: return "region_fill";
  }
  return "wireframe";
}

inline StyleMode parse_style_mode(std::string_view name) {
  for (StyleMode m : kAllStyleModes) {
    if (to_string(m) == name) return m;
  }
  fail(ErrorCode::InvalidArgument, "unknown style '" + std::string(name) + "'");
}

inline constexpr std::string_view kDarkBackground = "#101018";

struct Style {
  StyleMode mode = StyleMode::wireframe;
  double stroke_width = 1.5;  // viewport pixels
  std::string background = "#ffffff";
  std::uint64_t palette_seed = 1;
  bool outline = true;  // region_fill: stroke the loci over the faces

  static Style make(StyleMode mode, std::uint64_t seed = 1) {
    Style s;
    s.mode = mode;
    s.palette_seed = seed;
    switch (mode) {
      case StyleMode::wireframe:
        break;
      case StyleMode::dark_thick:
        s.stroke_width = 6.0;
        s.background = std::string(kDarkBackground);
        break;
      case StyleMode::region_fill:
        s.stroke_width = 3.0;
        s.background = std::string(kDarkBackground);
        break;
    }
    return s;
  }
};

struct Scene {
  std::optional<Ellipse> outer;
  std::optional<Ellipse> caustic;
  std::optional<Triangle> triangle;
  std::vector<Locus> loci;
  std::optional<Arrangement> arrangement;
};

namespace svg_detail {

/// Fixed six-decimal formatting, with negative zero printed as zero.
inline std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, end);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string xy(Point2 p) { return num(p.x) + "," + num(-p.y); }

inline std::string loop_path(const std::vector<Point2>& pts) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += (i == 0 ? "M" : " L") + xy(pts[i]);
  }
  return d + " Z";
}

inline constexpr std::array<std::string_view, 6> kWireColors{"#d62728", "#2ca02c", "#1f77b4",
                                                             "#9467bd", "#ff7f0e", "#8c564b"};

struct View {
  double x = 0.0, y = 0.0, w = 1.0, h = 1.0;
};

inline View fit_view(const Scene& scene, int width, int height) {
  std::vector<Point2> pts;
  for (const auto& e : {scene.outer, scene.caustic}) {
    if (e) pts.insert(pts.end(), {{-e->a(), -e->b()}, {e->a(), e->b()}});
  }
  if (scene.triangle) pts.insert(pts.end(), {scene.triangle->v1, scene.triangle->v2, scene.triangle->v3});
  for (const Locus& l : scene.loci) pts.insert(pts.end(), l.points.begin(), l.points.end());
  if (scene.arrangement) {
    pts.insert(pts.end(), scene.arrangement->vertices.begin(), scene.arrangement->vertices.end());
  }
  const BoundingBox box = bounding_box(pts);
  double w = box.width(), h = box.height();
  const double extent = std::max(w, h) > 0.0 ? std::max(w, h) : std::max(1.0, norm({box.max_x, box.max_y}));
  const double margin = 0.05 * extent;
  w = std::max(w, 1e-9 * extent) + 2.0 * margin;
  h = std::max(h, 1e-9 * extent) + 2.0 * margin;
  const double cx = 0.5 * (box.min_x + box.max_x);
  const double cy = -0.5 * (box.min_y + box.max_y);
  const double aspect = static_cast<double>(width) / static_cast<double>(height);
  if (w / h < aspect) {
    w = h * aspect;
  } else {
    h = w / aspect;
  }
  return {cx - w / 2.0, cy - h / 2.0, w, h};
}

inline bool has_drawable(const Scene& scene) {
  if (scene.outer || scene.caustic || scene.triangle) return true;
  if (scene.arrangement && !scene.arrangement->faces.empty()) return true;
  return std::any_of(scene.loci.begin(), scene.loci.end(), [](const Locus& l) { return !l.points.empty(); });
}

}  // namespace svg_detail

/// SVG 1.1 document for `scene`. Scene y points up; every number is printed
/// with six decimals so identical inputs give identical bytes.
inline std::string render_scene(const Scene& scene, const Style& style, int width = 800, int height = 800) {
  using svg_detail::num;
  if (!svg_detail::has_drawable(scene)) fail(ErrorCode::EmptyScene, "scene has nothing to draw");
  if (width <= 0 || height <= 0) fail(ErrorCode::InvalidArgument, "image size must be positive");
  if (!(style.stroke_width > 0.0)) fail(ErrorCode::InvalidArgument, "stroke width must be positive");

  const svg_detail::View view = svg_detail::fit_view(scene, width, height);
  const bool dark = style.mode != StyleMode::wireframe;
  const std::string ink = dark ? "#e8e8f0" : "#000000";
  const std::string faint = dark ? "#6a6a80" : "#888888";
  const std::string thin = num(dark ? 1.0 : style.stroke_width);
  const std::string stroke = num(style.stroke_width);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"" + num(view.x) + " " + num(view.y) + " " +
         num(view.w) + " " + num(view.h) + "\">\n";
  out += "<rect class=\"background\" x=\"" + num(view.x) + "\" y=\"" + num(view.y) + "\" width=\"" +
         num(view.w) + "\" height=\"" + num(view.h) + "\" fill=\"" + style.background + "\"/>\n";

  if (style.mode == StyleMode::region_fill) {
    std::optional<Arrangement> built;
    if (!scene.arrangement) {
      std::vector<std::vector<Point2>> curves;
      for (const Locus& l : scene.loci) {
        if (l.points.size() >= 3) curves.push_back(l.points);
      }
      built = build_arrangement(curves);
    }
    const Arrangement& arr = scene.arrangement ? *scene.arrangement : *built;
    const auto parents = face_containment(arr);
    std::vector<std::size_t> order;
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
      if (!arr.faces[f].is_outer) order.push_back(f);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return arr.faces[a].area > arr.faces[b].area; });
    if (!order.empty()) {
      const auto colors = pastel_palette(order.size(), style.palette_seed);
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::string d = svg_detail::loop_path(arr.loop(order[i]));
        for (std::size_t hole : holes_of(arr, parents, order[i])) d += " " + svg_detail::loop_path(arr.loop(hole));
        out += "<path class=\"face\" fill=\"" + colors[i].hex() + "\" fill-rule=\"evenodd\" stroke=\"none\" d=\"" +
               d + "\"/>\n";
      }
    }
  }

  auto conic = [&](const char* cls, const Ellipse& e, const std::string& color) {
    out += "<ellipse class=\"" + std::string(cls) + "\" cx=\"0.000000\" cy=\"0.000000\" rx=\"" + num(e.a()) +
           "\" ry=\"" + num(e.b()) + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + thin +
           "\" vector-effect=\"non-scaling-stroke\"/>\n";
  };
  if (scene.outer) conic("outer", *scene.outer, ink);
  if (scene.caustic) conic("caustic", *scene.caustic, faint);

  const bool stroke_loci = style.mode != StyleMode::region_fill || style.outline;
  if (stroke_loci && !scene.loci.empty()) {
    std::vector<Color> pastel;
    if (style.mode == StyleMode::dark_thick) pastel = pastel_palette(scene.loci.size(), style.palette_seed);
    for (std::size_t i = 0; i < scene.loci.size(); ++i) {
      const Locus& l = scene.loci[i];
      if (l.points.empty()) continue;
      std::string color;
      switch (style.mode) {
        case StyleMode::wireframe: color = std::string(svg_detail::kWireColors[i % svg_detail::kWireColors.size()]); break;
        case StyleMode::dark_thick: color = pastel[i].hex(); break;
        case StyleMode::region_fill: color = std::string(kDarkBackground); break;
      }
      if (l.classification.kind == LocusKind::stationary || l.points.size() < 2) {
        const double r = 0.008 * std::max(view.w, view.h) * std::max(1.0, style.stroke_width / 1.5);
        out += "<circle class=\"locus-dot\" cx=\"" + num(l.points.front().x) + "\" cy=\"" + num(-l.points.front().y) +
               "\" r=\"" + num(r) + "\" fill=\"" + color + "\"/>\n";
      } else {
        out += "<path class=\"locus\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + stroke +
               "\" stroke-linejoin=\"round\" vector-effect=\"non-scaling-stroke\" d=\"" +
               svg_detail::loop_path(l.points) + "\"/>\n";
      }
    }
  }

  if (scene.triangle) {
    const Triangle& t = *scene.triangle;
    out += "<polygon class=\"triangle\" points=\"" + svg_detail::xy(t.v1) + " " + svg_detail::xy(t.v2) + " " +
           svg_detail::xy(t.v3) + "\" fill=\"none\" stroke=\"" + (dark ? std::string("#ffffff") : std::string("#1f3fbf")) +
           "\" stroke-width=\"" + thin + "\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

/// One frame: conics, the full locus, and the family triangle at `t`.
inline std::string render_frame(const FamilySpec& f, const Locus& locus, const Style& style, double t,
                                int width = 800, int height = 800) {
  Scene scene;
  scene.outer = f.outer;
  scene.caustic = f.caustic;
  scene.loci.push_back(locus);
  scene.triangle = triangle_at(f, t);
  return render_scene(scene, style, width, height);
}

/// Frame i shows the triangle at t = 2πi/frames over the fixed locus.
inline std::vector<std::string> export_frames(const FamilySpec& f, const LocusRequest& req, const Style& style,
                                              int frames, int width = 800, int height = 800) {
  if (frames < 1) fail(ErrorCode::InvalidArgument, "need at least one frame");
  const Locus locus = sweep_locus(req);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (int i = 0; i < frames; ++i) {
    out.push_back(render_frame(f, locus, style, 2.0 * std::numbers::pi * i / frames, width, height));
  }
  return out;
}

}  // namespace poncelet
