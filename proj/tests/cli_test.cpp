#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "poncelet/service.hpp"

using namespace poncelet;
using api::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof addr;
  int port = 0;
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0 &&
      ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0) {
    port = ntohs(addr.sin_port);
  }
  ::close(fd);
  return port;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("poncelet_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd =
        env + " '" + std::string(PONCELET_CLI) + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ClassifyConfocalIncenter) {
  const Outcome r = run("classify --family confocal -a 2 -b 1 --center 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const json out = json::parse(r.out);
  EXPECT_EQ(out["kind"], "ellipse");
  EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, ClassifyMatchesApi) {
  for (int k : {1, 6, 59}) {
    const Outcome r = run("classify --family confocal -a 2 -b 1 --center " + std::to_string(k));
    ASSERT_EQ(r.code, 0) << r.err;
    const json api_out = api::locus_response(
        {{"family", {{"kind", "confocal"}, {"a", 2}, {"b", 1}}}, {"target", {{"center", k}}}})["classification"];
    EXPECT_EQ(r.out, api_out.dump() + "\n");
  }
}

TEST_F(Cli, RenderHomotheticCentroidIsADot) {
  const fs::path svg = dir_ / "x.svg";
  const Outcome r = run("render --family homothetic -a 2 -b 1 --center 2 -o '" + svg.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(svg));
  const std::string text = slurp(svg);
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_NE(text.find("class=\"locus-dot\""), std::string::npos);
  EXPECT_EQ(text.find("class=\"locus\""), std::string::npos);
}

TEST_F(Cli, RenderIsDeterministic) {
  const std::string flags = "--family confocal -a 2 -b 1 --center 59 --style region_fill --seed 17";
  const Outcome r1 = run("render " + flags + " -o '" + (dir_ / "a.svg").string() + "'");
  const Outcome r2 = run("render " + flags + " -o '" + (dir_ / "b.svg").string() + "'");
  ASSERT_EQ(r1.code, 0);
  ASSERT_EQ(r2.code, 0);
  EXPECT_EQ(slurp(dir_ / "a.svg"), slurp(dir_ / "b.svg"));
  const Outcome stdout_run = run("render " + flags);
  EXPECT_EQ(stdout_run.out, slurp(dir_ / "a.svg"));
}

TEST_F(Cli, SweepCsv) {
  const Outcome r = run("sweep --family confocal -a 2 -b 1 --vertex 1 --samples 32");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,x,y");
  int rows = 0;
  while (std::getline(in, line)) {
    double t = 0, x = 0, y = 0;
    char c1 = 0, c2 = 0;
    std::istringstream row(line);
    ASSERT_TRUE(row >> t >> c1 >> x >> c2 >> y) << line;
    EXPECT_NEAR(x * x / 4 + y * y, 1.0, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 32);
}

TEST_F(Cli, Frames) {
  const fs::path out = dir_ / "frames";
  const Outcome r = run("frames --family homothetic -a 2 -b 1 --center 1 --samples 64 --count 3 -o '" + out.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "frame_0000.svg"));
  EXPECT_TRUE(fs::exists(out / "frame_0002.svg"));
  EXPECT_FALSE(fs::exists(out / "frame_0003.svg"));
}

TEST_F(Cli, StateRoundTrip) {
  const Outcome enc = run("state encode --family dual -a 3 -b 1 --center 4 --style dark_thick --seed 99");
  ASSERT_EQ(enc.code, 0) << enc.err;
  const std::string blob = enc.out.substr(0, enc.out.find('\n'));
  const Outcome dec = run("state decode " + blob);
  ASSERT_EQ(dec.code, 0) << dec.err;
  const json state = json::parse(dec.out);
  EXPECT_EQ(state["family"]["kind"], "dual");
  EXPECT_EQ(state["family"]["a"], 3.0);
  EXPECT_EQ(state["target"]["center"], 4);
  EXPECT_EQ(state["style"], "dark_thick");
  EXPECT_EQ(state["palette_seed"], 99);
  EXPECT_EQ(api::state_from_json(state), decode(blob));
}

TEST_F(Cli, CorruptStateIsComputationError) {
  const Outcome r = run("state decode '!!!'");
  EXPECT_EQ(r.code, 1);
  const json err = json::parse(r.err);
  EXPECT_EQ(err["code"], "CorruptBlob");
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(Cli, GeometricFailureIsComputationError) {
  const Outcome r = run("classify --family circumcircle -a 2 -b 1 --center 3");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["code"], "InvalidAspect");
}

TEST_F(Cli, UsageErrorsNameTheFlag) {
  Outcome r = run("classify --family pentagon --center 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["code"], "UsageError");
  EXPECT_NE(r.err.find("--family"), std::string::npos) << r.err;

  r = run("classify --center 1 --vertex 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--center"), std::string::npos) << r.err;

  r = run("render --samples 3");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--samples"), std::string::npos) << r.err;

  r = run("");
  EXPECT_EQ(r.code, 2);

  r = run("classify --bogus");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos) << r.err;

  r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}

TEST_F(Cli, ServeRejectsBadPortEnvironment) {
  const Outcome r = run("serve --port 8080", "PONCELET_PORT=notaport");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("PONCELET_PORT"), std::string::npos);
  const Outcome s = run("serve --port 0 --static '" + (dir_ / "missing").string() + "'");
  EXPECT_EQ(s.code, 2);
}

TEST_F(Cli, ServeHonoursPortEnvironment) {
  const int port = free_port();
  ASSERT_GT(port, 0);
  fs::create_directories(dir_ / "ui");
  std::ofstream(dir_ / "ui" / "index.html") << "<html>ui</html>";
  const fs::path pid_file = dir_ / "pid";
  const std::string cmd = "PONCELET_PORT=" + std::to_string(port) + " '" + std::string(PONCELET_CLI) +
                          "' serve --port 1 --static '" + (dir_ / "ui").string() + "' >/dev/null 2>&1 & echo $! >'" +
                          pid_file.string() + "'";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  struct Reaper {
    fs::path pid_file;
    ~Reaper() { ::kill(std::stoi(slurp(pid_file)), SIGTERM); }
  } reaper{pid_file};
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int i = 0; i < 100 && !res; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    res = client.Get("/api/centers");
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).size(), 12u);
  const auto index = client.Get("/index.html");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->body, "<html>ui</html>");
}
