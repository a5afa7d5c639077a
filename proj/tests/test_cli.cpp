#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "lfwave/json_io.hpp"

// End-to-end runs of the built binary; LFWAVE_CLI_PATH comes from the
// build system.

namespace fs = std::filesystem;
using lfwave::Json;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() /
          ("lfwave_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LFWAVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pipeline: basic tree to verified system") {
  Workdir w;
  CHECK(run_cli("tree basic --p 2 --s 1 --N 2 -o " + w.path("t.json")) == 0);
  CHECK(run_cli("tree validate " + w.path("t.json")) == 0);
  CHECK(run_cli("tree step " + w.path("t.json") + " --node 3 --target 4 -o " +
                w.path("chain.json")) == 0);
  CHECK(run_cli("tree windows " + w.path("chain.json") + " --len 2") == 0);
  CHECK(run_cli("set build --tree " + w.path("chain.json") + " -o " +
                w.path("set.json")) == 0);
  CHECK(run_cli("set validate " + w.path("set.json")) == 0);
  CHECK(run_cli("mask build --tree " + w.path("chain.json") +
                " --A 0.5 --B 1.6 --seed 9 -o " + w.path("mask.json")) == 0);
  CHECK(run_cli("mra build --tree " + w.path("chain.json") + " --mask " +
                w.path("mask.json") + " -o " + w.path("family.json")) == 0);
  CHECK(run_cli("mra verify " + w.path("family.json")) == 0);
  CHECK(run_cli("wavelets build " + w.path("family.json") + " -o " +
                w.path("system.json")) == 0);
  CHECK(run_cli("wavelets verify " + w.path("system.json")) == 0);
  CHECK(run_cli("verify all " + w.path("system.json") +
                " --depth 3 --levels -1..1 --tol 1e-9 --report " +
                w.path("report.json")) == 0);
  const Json report = lfwave::load_json_file(w.path("report.json"));
  CHECK(report.at("payload").at("pass") == true);
  CHECK(report.at("format") == "lfwave/1");

  CHECK(run_cli("export grid " + w.path("system.json") + " -o " +
                w.path("grid.csv")) == 0);
  const std::string csv = slurp(w.path("grid.csv"));
  CHECK(csv.find("phi_re") != std::string::npos);
  CHECK(csv.find("psi1_re") != std::string::npos);

  // The stepped tree has the documented chain shape.
  const lfwave::ValidTree chain = lfwave::tree_from_json(
      lfwave::expect_document(lfwave::load_json_file(w.path("chain.json")),
                              "tree"));
  CHECK(chain.height() == 4);
  CHECK(chain.size() == 5);
}

TEST_CASE("determinism: same config and seed give identical bytes") {
  Workdir w;
  REQUIRE(run_cli("tree basic --p 3 --s 1 --N 2 -o " + w.path("t.json")) ==
          0);
  for (int round : {1, 2}) {
    const std::string tag = std::to_string(round);
    REQUIRE(run_cli("mask build --tree " + w.path("t.json") +
                    " --A 0.6 --B 1.4 --seed 4242 -o " +
                    w.path("mask" + tag + ".json")) == 0);
    REQUIRE(run_cli("mra build --tree " + w.path("t.json") + " --mask " +
                    w.path("mask" + tag + ".json") + " -o " +
                    w.path("family" + tag + ".json")) == 0);
  }
  CHECK(slurp(w.path("mask1.json")) == slurp(w.path("mask2.json")));
  CHECK(slurp(w.path("family1.json")) == slurp(w.path("family2.json")));
  CHECK(slurp(w.path("mask1.json")).size() > 100);
}

TEST_CASE("exit codes: usage 1, verification 2, schema 3") {
  Workdir w;
  CHECK(run_cli("tree basic --badflag") == 1);
  CHECK(run_cli("nonsense") == 1);

  std::ofstream(w.path("bad.json")) << "{\"format\":\"other\"}";
  CHECK(run_cli("tree validate " + w.path("bad.json")) == 3);
  std::ofstream(w.path("junk.json")) << "not json";
  CHECK(run_cli("tree validate " + w.path("junk.json")) == 3);

  REQUIRE(run_cli("tree basic --p 2 --s 1 --N 2 -o " + w.path("t.json")) ==
          0);
  CHECK(run_cli("tree step " + w.path("t.json") +
                " --node 4 --target 3 -o " + w.path("x.json")) == 2);

  // An invalid tree file validates with exit 2.
  Json doc = lfwave::load_json_file(w.path("t.json"));
  doc["payload"]["nodes"][1]["label"] = Json::array({1});
  lfwave::save_json_file(w.path("broken.json"), doc);
  CHECK(run_cli("tree validate " + w.path("broken.json")) == 2);

  // Tampered family: named failing check, exit 2.
  REQUIRE(run_cli("mask build --tree " + w.path("t.json") +
                  " --A 1 --B 1 --seed 0 -o " + w.path("mask.json")) == 0);
  REQUIRE(run_cli("mra build --tree " + w.path("t.json") + " --mask " +
                  w.path("mask.json") + " -o " + w.path("family.json")) ==
          0);
  doc = lfwave::load_json_file(w.path("family.json"));
  doc["payload"]["dual_scaling"]["values"][0]["re"] = 2.5;
  lfwave::save_json_file(w.path("tampered.json"), doc);
  CHECK(run_cli("mra verify " + w.path("tampered.json")) == 2);
}

TEST_CASE("bad LFWAVE_TOL is a usage error") {
  Workdir w;
  REQUIRE(run_cli("tree basic --p 2 --s 1 --N 2 -o " + w.path("t.json")) ==
          0);
  const std::string cmd = std::string("LFWAVE_TOL=bogus ") + LFWAVE_CLI_PATH +
                          " tree validate " + w.path("t.json") +
                          " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
}
