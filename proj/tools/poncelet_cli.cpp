// poncelet: batch rendering, classification and the JSON service.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "poncelet/poncelet.hpp"
#include "poncelet/service.hpp"

namespace {

using poncelet::api::json;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string family = "confocal";
  double a = 1.5;
  double b = 1.0;
  std::optional<double> free;
  std::optional<int> center;
  std::optional<int> vertex;
  std::string derived = "reference";
  std::string style = "wireframe";
  std::uint64_t seed = 1;
  int samples = poncelet::kDefaultSamples;
  std::string output;
  int count = 60;
  int width = 800;
  int height = 800;
};

template <class Names>
std::vector<std::string> names_of(const Names& all) {
  std::vector<std::string> out;
  for (auto v : all) out.emplace_back(poncelet::to_string(v));
  return out;
}

void add_request_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "Poncelet family")
      ->check(CLI::IsMember(names_of(poncelet::kAllFamilyKinds)))
      ->capture_default_str();
  cmd->add_option("-a", o.a, "outer semi-axis along x")->capture_default_str();
  cmd->add_option("-b", o.b, "outer semi-axis along y")->capture_default_str();
  cmd->add_option("--free", o.free, "free caustic parameter (circumcircle, generic)");
  auto* c = cmd->add_option("--center", o.center, "triangle center index X_k");
  auto* v = cmd->add_option("--vertex", o.vertex, "track vertex 1, 2 or 3")->check(CLI::Range(1, 3));
  c->excludes(v);
  cmd->add_option("--derived", o.derived, "derived triangle")
      ->check(CLI::IsMember(names_of(poncelet::kAllDerivedKinds)))
      ->capture_default_str();
  cmd->add_option("--samples", o.samples, "samples over the family parameter")
      ->check(CLI::Range(poncelet::kMinSamples, poncelet::kMaxSamples))
      ->capture_default_str();
}

void add_style_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--style", o.style, "render style")
      ->check(CLI::IsMember(names_of(poncelet::kAllStyleModes)))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "palette seed")->capture_default_str();
  cmd->add_option("--width", o.width, "image width in pixels")->check(CLI::Range(1, 20000));
  cmd->add_option("--height", o.height, "image height in pixels")->check(CLI::Range(1, 20000));
}

poncelet::ExperimentState state_of(const Options& o) {
  poncelet::ExperimentState s;
  s.family = poncelet::parse_family_kind(o.family);
  s.a = o.a;
  s.b = o.b;
  s.free = o.free;
  s.target = o.vertex ? poncelet::Target::vertex(*o.vertex) : poncelet::Target::center(o.center.value_or(1));
  s.derived = poncelet::parse_derived_kind(o.derived);
  s.samples = o.samples;
  s.style = poncelet::parse_style_mode(o.style);
  s.palette_seed = o.seed;
  return s;
}

poncelet::LocusRequest request_of(const Options& o) {
  poncelet::LocusRequest req = state_of(o).locus_request();
  poncelet::validate(req);
  return req;
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) poncelet::fail(poncelet::ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) poncelet::fail(poncelet::ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

void report(const std::string& code, const std::string& message) {
  std::cerr << json{{"code", code}, {"message", message}}.dump() << '\n';
}

int run_render(const Options& o) {
  const poncelet::ExperimentState s = state_of(o);
  poncelet::Scene scene;
  const poncelet::LocusRequest req = request_of(o);
  scene.outer = req.family.outer;
  scene.caustic = req.family.caustic;
  scene.loci.push_back(poncelet::sweep_locus(req));
  write_output(o.output, poncelet::render_scene(scene, s.style_spec(), o.width, o.height));
  return kExitOk;
}

int run_classify(const Options& o) {
  const poncelet::Locus locus = poncelet::sweep_locus(request_of(o));
  write_output(o.output, poncelet::api::classification_json(locus.classification).dump() + "\n");
  return kExitOk;
}

int run_sweep(const Options& o) {
  const poncelet::Locus locus = poncelet::sweep_locus(request_of(o));
  std::string csv = "t,x,y\n";
  for (std::size_t i = 0; i < locus.points.size(); ++i) {
    csv += shortest(locus.params[i]) + "," + shortest(locus.points[i].x) + "," + shortest(locus.points[i].y) + "\n";
  }
  write_output(o.output, csv);
  return kExitOk;
}

int run_frames(const Options& o) {
  if (o.output.empty()) poncelet::fail(poncelet::ErrorCode::InvalidArgument, "frames needs -o <dir>");
  const poncelet::LocusRequest req = request_of(o);
  const auto frames =
      poncelet::export_frames(req.family, req, state_of(o).style_spec(), o.count, o.width, o.height);
  std::filesystem::create_directories(o.output);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
    write_output((std::filesystem::path(o.output) / name).string(), frames[i]);
  }
  std::cout << frames.size() << " frames written to " << o.output << '\n';
  return kExitOk;
}

int run_state_encode(const Options& o) {
  poncelet::ExperimentState s = state_of(o);
  poncelet::validate(s);
  std::cout << poncelet::encode(s) << '\n';
  return kExitOk;
}

int run_state_decode(const std::string& blob) {
  std::cout << poncelet::api::state_to_json(poncelet::decode(blob)).dump() << '\n';
  return kExitOk;
}

int run_serve(int port, const std::string& static_dir) {
  if (const char* env = std::getenv("PONCELET_PORT"); env && *env) {
    int value = 0;
    const std::string_view text(env);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || value < 0 || value > 65535) {
      report("UsageError", "PONCELET_PORT must be a port number");
      return kExitUsage;
    }
    port = value;
  }
  httplib::Server server;
  poncelet::service::install_routes(server);
  if (!static_dir.empty() && !poncelet::service::mount_static(server, static_dir)) {
    report("UsageError", "--static: '" + static_dir + "' is not a directory");
    return kExitUsage;
  }
  if (port == 0) {
    port = server.bind_to_any_port("0.0.0.0");
  } else if (!server.bind_to_port("0.0.0.0", port)) {
    port = -1;
  }
  if (port < 0) {
    report("Internal", "cannot bind the listening socket");
    return kExitComputation;
  }
  std::cout << "listening on http://0.0.0.0:" << port << std::endl;
  server.listen_after_bind();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet triangle loci: render, classify, sweep and serve"};
  app.require_subcommand(1);

  Options o;
  auto* render = app.add_subcommand("render", "render a locus scene to SVG");
  add_request_flags(render, o);
  add_style_flags(render, o);
  render->add_option("-o,--output", o.output, "output file (stdout if omitted)");

  auto* classify = app.add_subcommand("classify", "print the locus classification as JSON");
  add_request_flags(classify, o);
  classify->add_option("-o,--output", o.output, "output file (stdout if omitted)");

  auto* sweep = app.add_subcommand("sweep", "print locus samples as CSV t,x,y");
  add_request_flags(sweep, o);
  sweep->add_option("-o,--output", o.output, "output file (stdout if omitted)");

  auto* frames = app.add_subcommand("frames", "write numbered animation frames");
  add_request_flags(frames, o);
  add_style_flags(frames, o);
  frames->add_option("--count", o.count, "number of frames")->check(CLI::Range(1, 100000))->capture_default_str();
  frames->add_option("-o,--output", o.output, "output directory")->required();

  auto* state = app.add_subcommand("state", "encode or decode a share string");
  state->require_subcommand(1);
  auto* encode = state->add_subcommand("encode", "encode the flags as a share string");
  add_request_flags(encode, o);
  add_style_flags(encode, o);
  std::string blob;
  auto* decode = state->add_subcommand("decode", "decode a share string to JSON");
  decode->add_option("blob", blob, "share string")->required();

  int port = 8080;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "start the HTTP JSON service");
  serve->add_option("--port", port, "listening port, 0 picks a free one (PONCELET_PORT overrides)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve->add_option("--static", static_dir, "directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report("UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (*render) return run_render(o);
    if (*classify) return run_classify(o);
    if (*sweep) return run_sweep(o);
    if (*frames) return run_frames(o);
    if (*encode) return run_state_encode(o);
    if (*decode) return run_state_decode(blob);
    if (*serve) return run_serve(port, static_dir);
  } catch (const poncelet::Error& e) {
    report(std::string(poncelet::error_name(e.code())), e.what());
    return kExitComputation;
  } catch (const std::exception& e) {
    report("Internal", e.what());
    return kExitComputation;
  }
  return kExitUsage;
}
