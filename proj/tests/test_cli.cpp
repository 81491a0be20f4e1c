#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("nbtb_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int nbtb(const std::string& args) {
  const std::string cmd = std::string(NBTB_CLI) + " " + args + " 2>" +
                          (workdir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("classify the catenoid") {
  const fs::path out = workdir() / "cat.json";
  CHECK(nbtb("classify --surface catenoid:c=1 --grid 5x5 -q --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"]["class"] == "Minimal");
  CHECK(j["verdict"]["biharmonic"] == true);
  CHECK(j["config"]["mode"] == "classify");
}

TEST_CASE("malformed surface tag exits 2 and writes nothing") {
  const fs::path out = workdir() / "bad.json";
  CHECK(nbtb("analyze --surface torus:R=2,q=1 --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(slurp(workdir() / "stderr.txt").find("input error") != std::string::npos);
}

TEST_CASE("other input errors exit 2") {
  CHECK(nbtb("analyze --grid 2x2 -q >/dev/null") == 2);
  CHECK(nbtb("analyze --t 0,50 -q >/dev/null") == 2);
  CHECK(nbtb("analyze --format xml -q >/dev/null") == 2);
  CHECK(nbtb("analyze --bogus >/dev/null") == 2);
  CHECK(nbtb("-q >/dev/null") == 2);
  CHECK(nbtb("analyze --config /nonexistent.ini -q >/dev/null") == 2);
}

TEST_CASE("degenerate charts exit 3") {
  CHECK(nbtb("analyze --surface cone --domain -1,1,-1,1 --grid 3x3 -q >/dev/null") == 3);
}

TEST_CASE("inconclusive verdict exits 1") {
  CHECK(nbtb("classify --surface graph:c20=2e-6 --domain -0.1,0.1,-0.1,0.1 -q >/dev/null") == 1);
}

TEST_CASE("repeated runs produce byte-identical reports") {
  const fs::path a = workdir() / "a.csv";
  const fs::path b = workdir() / "b.csv";
  const std::string args = "verify-oracle --surface torus:R=2,r=0.5 --grid 4x4 --t -1,0,1 --format csv -q --out ";
  REQUIRE(nbtb(args + a.string()) == 0);
  REQUIRE(nbtb(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("# schema_version=1\n", 0) == 0);
}

TEST_CASE("config file with flag override") {
  const fs::path ini = workdir() / "run.ini";
  const fs::path out = workdir() / "cfg.json";
  std::ofstream(ini) << "[surface]\ntag = cylinder:r=2\n[grid]\nsize = 4x4\nfiber = 0,1\n"
                        "[run]\nmode = analyze\nout = "
                     << out.string() << "\n";
  CHECK(nbtb("--config " + ini.string() + " -q") == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"]["class"] == "CircularCylinder");
  CHECK(j["samples"].size() == 32u);

  CHECK(nbtb("--config " + ini.string() + " --surface sphere:r=2 -q") == 0);
  j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"]["class"] == "RoundSphere");
  CHECK(j["verdict"]["curvature"].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("summary goes to stderr, report to stdout") {
  const fs::path out = workdir() / "stdout.json";
  CHECK(nbtb("classify --surface sphere --grid 3x3 > " + out.string()) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["verdict"]["class"] == "RoundSphere");
  CHECK(slurp(workdir() / "stderr.txt").find("RoundSphere") != std::string::npos);
}

TEST_CASE("shipped configs run and are reproducible") {
  for (const char* name : {"torus_analyze.ini", "catenoid_verify.ini", "classify_graph.ini"}) {
    const fs::path ini = fs::path(NBTB_CONFIG_DIR) / name;
    const fs::path a = workdir() / "cfg_a.out";
    const fs::path b = workdir() / "cfg_b.out";
    INFO(name);
    CHECK(nbtb("--config " + ini.string() + " -q --out " + a.string()) == 0);
    CHECK(nbtb("--config " + ini.string() + " -q --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
  }
  const fs::path v = workdir() / "cfg_a.out";
  nbtb("--config " + (fs::path(NBTB_CONFIG_DIR) / "catenoid_verify.ini").string() + " -q --out " + v.string());
  const auto j = nlohmann::json::parse(slurp(v));
  CHECK(j["verdict"]["class"] == "Minimal");
  CHECK(j["summary"]["max_tension_delta"].get<double>() <= 1e-6);
  CHECK(j["summary"]["max_fd_delta"].get<double>() <= 1e-3);
  fs::remove_all(workdir());
}
