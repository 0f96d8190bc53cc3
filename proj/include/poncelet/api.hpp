#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "poncelet/centers.hpp"
#include "poncelet/error.hpp"
#include "poncelet/family.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/session.hpp"
#include "poncelet/svg.hpp"

namespace poncelet::api {

using json = nlohmann::json;

struct ApiError {
  std::string code;
  std::string message;
  int http_status = 400;

  json to_json() const { return {{"code", code}, {"message", message}, {"http_status", http_status}}; }
};

/// 400 for malformed or out-of-range input, 422 for valid input that has no
/// geometric realization.
inline int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAspect:
    case ErrorCode::PointInsideConic:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::DegenerateDerived:
    case ErrorCode::CenterAtInfinity:
    case ErrorCode::AllSamplesDegenerate:
    case ErrorCode::EmptyScene:
      return 422;
    default:
      return 400;
  }
}

inline ApiError to_api_error(const Error& e) {
  return {std::string(error_name(e.code())), e.what(), http_status_for(e.code())};
}

namespace detail {

[[noreturn]] inline void bad_request(const std::string& message) { fail(ErrorCode::InvalidArgument, message); }

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad_request(std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline double number(const json& v, const char* what) {
  if (!v.is_number()) bad_request(std::string("'") + what + "' must be a number");
  return v.get<double>();
}

inline int integer(const json& v, const char* what) {
  if (!v.is_number_integer()) bad_request(std::string("'") + what + "' must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < -1000000000 || x > 1000000000) bad_request(std::string("'") + what + "' is out of range");
  return static_cast<int>(x);
}

inline std::string text(const json& v, const char* what) {
  if (!v.is_string()) bad_request(std::string("'") + what + "' must be a string");
  return v.get<std::string>();
}

inline json point(Point2 p) { return json::array({p.x, p.y}); }

}  // namespace detail

struct FamilyParams {
  FamilyKind kind = FamilyKind::confocal;
  double a = 1.0;
  double b = 1.0;
  std::optional<double> free;

  FamilySpec build() const { return make_family(kind, a, b, free); }
};

inline FamilyParams family_params_from_json(const json& j) {
  using namespace detail;
  FamilyParams p;
  p.kind = parse_family_kind(text(require(j, "kind"), "kind"));
  p.a = number(require(j, "a"), "a");
  p.b = number(require(j, "b"), "b");
  if (j.contains("free") && !j.at("free").is_null()) p.free = number(j.at("free"), "free");
  return p;
}

inline json family_params_to_json(const FamilyParams& p) {
  json j{{"kind", to_string(p.kind)}, {"a", p.a}, {"b", p.b}};
  if (p.free) j["free"] = *p.free;
  return j;
}

inline Target target_from_json(const json& j) {
  using namespace detail;
  const bool has_center = j.is_object() && j.contains("center");
  const bool has_vertex = j.is_object() && j.contains("vertex");
  if (has_center == has_vertex) bad_request("target needs exactly one of 'center' or 'vertex'");
  return has_center ? Target::center(integer(j.at("center"), "center"))
                    : Target::vertex(integer(j.at("vertex"), "vertex"));
}

inline json target_to_json(const Target& t) {
  return t.kind == Target::Kind::center ? json{{"center", t.index}} : json{{"vertex", t.index}};
}

/// Classification object shared by `classify` and POST /api/locus.
inline json classification_json(const Classification& c) {
  return {{"kind", to_string(c.kind)},
          {"conic_residual", c.conic_residual},
          {"quartic_residual", c.quartic_residual},
          {"self_intersections", c.self_intersections}};
}

inline LocusRequest locus_request_from_json(const json& body) {
  using namespace detail;
  LocusRequest req;
  req.family = family_params_from_json(require(body, "family")).build();
  req.target = target_from_json(require(body, "target"));
  if (body.contains("derived")) req.derived = parse_derived_kind(text(body.at("derived"), "derived"));
  if (body.contains("samples")) req.samples = integer(body.at("samples"), "samples");
  if (req.samples < kMinSamples || req.samples > kMaxSamples) {
    fail(ErrorCode::OutOfRange, "samples must lie in [16, 100000]");
  }
  validate(req);
  return req;
}

inline json families_listing() {
  json out = json::array();
  for (FamilyKind k : kAllFamilyKinds) {
    json schema{{"a", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                {"b", {{"type", "number"}, {"exclusiveMinimum", 0}}}};
    if (k == FamilyKind::circumcircle) {
      schema["free"] = {{"type", "number"}, {"exclusiveMinimum", 0}, {"exclusiveMaximum", 1},
                        {"default", kDefaultCircumcircleFree}, {"requires", "a == b"}};
    } else if (k == FamilyKind::generic) {
      schema["free"] = {{"type", "number"}, {"exclusiveMinimum", 0}, {"exclusiveMaximum", "a"},
                        {"required", true}};
    }
    const auto center = stationary_center_of(k);
    out.push_back({{"kind", to_string(k)},
                   {"params_schema", schema},
                   {"expected_stationary_center", center ? json(*center) : json(nullptr)}});
  }
  return out;
}

inline json centers_listing(const CenterRegistry& registry = CenterRegistry::builtin()) {
  json out = json::array();
  for (const auto& [k, name] : registry.listing()) out.push_back({{"k", k}, {"name", name}});
  return out;
}

inline json locus_to_json(const Locus& locus) {
  json points = json::array();
  for (Point2 p : locus.points) points.push_back(detail::point(p));
  return {{"points", std::move(points)},
          {"classification", classification_json(locus.classification)},
          {"dropped_samples", locus.dropped_samples}};
}

/// POST /api/locus
inline json locus_response(const json& body) { return locus_to_json(sweep_locus(locus_request_from_json(body))); }

/// POST /api/triangle
inline json triangle_response(const json& body) {
  using namespace detail;
  const FamilySpec family = family_params_from_json(require(body, "family")).build();
  const double t = number(require(body, "t"), "t");
  DerivedKind derived = DerivedKind::reference;
  if (body.contains("derived")) derived = parse_derived_kind(text(body.at("derived"), "derived"));

  const Triangle tri = derived_triangle(triangle_at(family, t), derived);
  json centers = json::object();
  if (body.contains("centers")) {
    const json& ks = body.at("centers");
    if (!ks.is_array()) bad_request("'centers' must be an array of indices");
    for (const json& kj : ks) {
      const int k = integer(kj, "centers[]");
      try {
        centers[std::to_string(k)] = point(center_position(tri, k));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CenterAtInfinity) throw;
        centers[std::to_string(k)] = nullptr;
      }
    }
  }
  return {{"vertices", json::array({point(tri.v1), point(tri.v2), point(tri.v3)})},
          {"porism_residual", porism_residual(family, t)},
          {"centers", std::move(centers)}};
}

inline json state_to_json(const ExperimentState& s) {
  return {{"schema_version", s.schema_version},
          {"family", family_params_to_json({s.family, s.a, s.b, s.free})},
          {"target", target_to_json(s.target)},
          {"derived", to_string(s.derived)},
          {"samples", s.samples},
          {"style", to_string(s.style)},
          {"palette_seed", s.palette_seed},
          {"animation_speed", s.animation_speed}};
}

inline ExperimentState state_from_json(const json& j) {
  using namespace detail;
  ExperimentState s;
  if (j.contains("schema_version") && integer(j.at("schema_version"), "schema_version") != kSchemaVersion) {
    fail(ErrorCode::UnsupportedVersion, "unsupported state schema version");
  }
  const FamilyParams f = family_params_from_json(require(j, "family"));
  s.family = f.kind;
  s.a = f.a;
  s.b = f.b;
  s.free = f.free;
  s.target = target_from_json(require(j, "target"));
  if (j.contains("derived")) s.derived = parse_derived_kind(text(j.at("derived"), "derived"));
  if (j.contains("samples")) s.samples = integer(j.at("samples"), "samples");
  if (j.contains("style")) s.style = parse_style_mode(text(j.at("style"), "style"));
  if (j.contains("palette_seed")) {
    if (!j.at("palette_seed").is_number_unsigned()) bad_request("'palette_seed' must be a non-negative integer");
    s.palette_seed = j.at("palette_seed").get<std::uint64_t>();
  }
  if (j.contains("animation_speed")) s.animation_speed = number(j.at("animation_speed"), "animation_speed");
  validate(s);
  return s;
}

/// GET /api/state/<blob>
inline json state_response(std::string_view blob) { return state_to_json(decode(blob)); }

/// POST /api/render: either {"state": blob} or an explicit request with a
/// "style" object {mode, seed, stroke_width}. Optional width, height and t
/// (draws the family triangle at that parameter).
inline std::string render_response(const json& body) {
  using namespace detail;
  LocusRequest req;
  Style style;
  if (body.is_object() && body.contains("state")) {
    const ExperimentState s = decode(text(body.at("state"), "state"));
    req = s.locus_request();
    style = s.style_spec();
  } else {
    req = locus_request_from_json(body);
    const json st = body.contains("style") ? body.at("style") : json::object();
    if (!st.is_object()) bad_request("'style' must be an object");
    std::uint64_t seed = 1;
    if (st.contains("seed")) {
      if (!st.at("seed").is_number_unsigned()) bad_request("'seed' must be a non-negative integer");
      seed = st.at("seed").get<std::uint64_t>();
    }
    style = Style::make(st.contains("mode") ? parse_style_mode(text(st.at("mode"), "mode")) : StyleMode::wireframe,
                        seed);
    if (st.contains("stroke_width")) style.stroke_width = number(st.at("stroke_width"), "stroke_width");
  }
  int width = 800, height = 800;
  if (body.contains("width")) width = integer(body.at("width"), "width");
  if (body.contains("height")) height = integer(body.at("height"), "height");
  if (width < 1 || height < 1 || width > 20000 || height > 20000) fail(ErrorCode::OutOfRange, "image size out of range");

  Scene scene;
  scene.outer = req.family.outer;
  scene.caustic = req.family.caustic;
  scene.loci.push_back(sweep_locus(req));
  if (body.contains("t")) scene.triangle = triangle_at(req.family, number(body.at("t"), "t"));
  return render_scene(scene, style, width, height);
}

}  // namespace poncelet::api
