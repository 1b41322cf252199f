#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("rispace_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const fs::path& workdir() {
  static const ScratchDir dir;
  return dir.path;
}

Result run(const std::string& args, const std::string& env = "") {
  const fs::path out = workdir() / "stdout.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && " + env + " '" RISPACE_CLI "' " + args +
                          " > '" + out.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const std::string& name) {
  std::ifstream in(workdir() / name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& name, const std::string& text) { std::ofstream(workdir() / name) << text; }

}  // namespace

TEST_CASE("norm") {
  write("const1.stepfn", "stepfn v1\n1 1\n");
  write("ind_quarter.stepfn", "stepfn v1\n0.25 1\n1 0\n");
  write("bad.stepfn", "stepfn v1\n0.5 1\n0.4 2\n");
  CHECK(run("norm --space Lp:2 --input const1.stepfn").out == "1.000000000000\n");
  CHECK(run("norm --space G --input ind_quarter.stepfn").out == "0.788248015893\n");
  CHECK(run("norm --space G1 --input ind_quarter.stepfn").out == "1.086845075574\n");
  CHECK(run("norm --space G --input ind_quarter.stepfn").code == 0);
  CHECK(run("norm --space H --input ind_quarter.stepfn").code == 3);
  CHECK(run("norm --space Lp:0.5 --input ind_quarter.stepfn").code == 3);
  CHECK(run("norm --space G --input missing.stepfn").code == 2);
  CHECK(run("norm --space G --input bad.stepfn").code == 2);
  CHECK(run("norm --space G").code == 3);
}

TEST_CASE("rearrange and rademacher") {
  CHECK(run("rademacher --n 2 --out r2.stepfn").code == 0);
  CHECK(slurp("r2.stepfn") == "stepfn v1\n0.25 1\n0.5 -1\n0.75 1\n1 -1\n");
  CHECK(run("rearrange --input r2.stepfn --out r2s.stepfn").code == 0);
  CHECK(slurp("r2s.stepfn") == "stepfn v1\n1 1\n");
  CHECK(run("rademacher --coeffs 1,1,1,1 --space L1").out == "1.500000000000\n");
  CHECK(run("rademacher --n 25").code == 3);
  CHECK(run("rademacher --coeffs 1,x").code == 3);
}

TEST_CASE("verify") {
  const auto t1 = run("verify theorem1 --space G --nmax 14 --trials 20 --out t1.json");
  CHECK(t1.code == 0);
  const auto j = nlohmann::json::parse(slurp("t1.json"));
  CHECK(j["experiment"] == "theorem1");
  CHECK(j["parameters"]["seed"] == 42);
  CHECK(j["pass"] == true);

  CHECK(run("verify sign --n 8 --trials 200 --seed 7 --out a.json").code == 0);
  CHECK(run("verify sign --n 8 --trials 200 --seed 7 --out b.json").code == 0);
  CHECK(slurp("a.json") == slurp("b.json"));
  CHECK(run("verify sign --n 8 --trials 50 --seed 7 --format csv --out a.csv").code == 0);
  CHECK(run("verify sign --n 8 --trials 50 --seed 7 --format csv --out b.csv", "RISPACE_WORKERS=3").code == 0);
  CHECK(slurp("a.csv") == slurp("b.csv"));

  const auto text = run("verify gg1 --grid 20 --format text");
  CHECK(text.code == 0);
  CHECK(text.out.find("result: PASS") != std::string::npos);

  // in Linf the ratio is sqrt(n), so the window check fails and the exit code is 1
  CHECK(run("verify theorem1 --space Linf --nmax 16 --trials 0").code == 1);

  CHECK(run("verify nope").code == 3);
  CHECK(run("verify sign --n 21").code == 3);
  CHECK(run("verify sign --space G").code == 3);
  CHECK(run("verify sign --format xml").code == 3);
  CHECK(run("verify gg1", "RISPACE_WORKERS=zero").code == 3);
  CHECK(run("verify gg1", "RISPACE_WORKERS=0").code == 3);
}
