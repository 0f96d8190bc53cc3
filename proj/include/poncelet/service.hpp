#pragma once

#include <exception>
#include <functional>
#include <string>

// Eigen must be parsed before httplib: <resolv.h> defines a `_res` macro.
#include "poncelet/api.hpp"

#include "httplib.h"

namespace poncelet::service {

using api::json;

namespace detail {

inline void send_error(httplib::Response& res, const api::ApiError& err) {
  res.status = err.http_status;
  res.set_content(err.to_json().dump(), "application/json");
}

/// Runs a handler, mapping engine errors to 400/422 and anything else to a
/// bare 500 that never carries partial output.
inline void guarded(httplib::Response& res, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, api::to_api_error(e));
  } catch (const json::exception& e) {
    send_error(res, {"InvalidArgument", e.what(), 400});
  } catch (const std::exception& e) {
    send_error(res, {"Internal", e.what(), 500});
  }
}

inline json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) fail(ErrorCode::InvalidArgument, "request body is not valid JSON");
  if (!body.is_object()) fail(ErrorCode::InvalidArgument, "request body must be a JSON object");
  return body;
}

inline void send_json(httplib::Response& res, const json& j) { res.set_content(j.dump(), "application/json"); }

}  // namespace detail

/// Registers the JSON endpoints. No state survives between requests.
inline void install_routes(httplib::Server& server) {
  using namespace detail;
  server.Get("/api/families", [](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, api::families_listing()); });
  });
  server.Get("/api/centers", [](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, api::centers_listing()); });
  });
  server.Post("/api/locus", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, api::locus_response(parse_body(req))); });
  });
  server.Post("/api/triangle", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, api::triangle_response(parse_body(req))); });
  });
  server.Post("/api/render", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(api::render_response(parse_body(req)), "image/svg+xml"); });
  });
  server.Get(R"(/api/state/([A-Za-z0-9_\-!%.~]*))", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, api::state_response(req.matches[1].str())); });
  });
}

/// Serves the UI bundle from `dir` at the site root.
inline bool mount_static(httplib::Server& server, const std::string& dir) { return server.set_mount_point("/", dir); }

}  // namespace poncelet::service
