#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

std::string binary_path() {
  const char* bin = std::getenv("PHOTONTRAIN_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PHOTONTRAIN_BIN must point at the CLI");
  return bin;
}

CommandResult run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult res;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("simulate produces a passing GHZ report") {
  const CommandResult res = run("simulate --kind ghz --n 4 --seed 7");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"pass\": true") != std::string::npos);
  CHECK(res.output.find("corrected_fidelity_vs_reference") !=
        std::string::npos);
  CHECK(res.output.find("bit_convention") != std::string::npos);
}

TEST_CASE("simulate with atomic isometries passes stabilizer checks") {
  const CommandResult res =
      run("simulate --kind cluster --n 3 --atom ca40 --alpha 0.7853981634");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("stabilizer_expectations") != std::string::npos);
  CHECK(res.output.find("\"pass\": true") != std::string::npos);
  const CommandResult rb =
      run("simulate --kind cluster --n 3 --atom rb87 --seed 5");
  CHECK(rb.exit_code == 0);
  CHECK(rb.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("simulate --n 0").exit_code == 2);
  CHECK(run("simulate --kind bogus --n 2").exit_code == 2);
  CHECK(run("simulate --atom unobtainium --n 2").exit_code == 2);
  CHECK(run("simulate --alpha 9 --n 2").exit_code == 2);
  CHECK(run("budget --p-photon 1.3e-2?").exit_code == 2);
  CHECK(run("nosuchcommand").exit_code == 2);
  CHECK(run("").exit_code == 2);
}

TEST_CASE("verify suites pass for every atom") {
  for (const char* atom : {"abstract", "ca40", "rb87"}) {
    const CommandResult res = run(std::string("verify --atom ") + atom);
    CAPTURE(atom);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("budget report carries the headline numbers") {
  const CommandResult res = run("budget");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"threshold_anchors\"") != std::string::npos);
  CHECK(res.output.find("0.53") != std::string::npos);
  CHECK(res.output.find("\"loss_tolerance\": true") != std::string::npos);
  // 0.74^10 appears in the n = 10 row.
  CHECK(res.output.find("0.0492") != std::string::npos);

  const CommandResult low = run("budget --p-photon 0.167 --n 2");
  CHECK(low.exit_code == 0);
  CHECK(low.output.find("0.0278") != std::string::npos);
  CHECK(low.output.find("\"loss_tolerance\": false") != std::string::npos);

  const CommandResult csv = run("budget --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("n,p_cavity_chain,p_spdc_chain,ratio\n", 0) == 0);
}

TEST_CASE("identical config and seed give byte-identical files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "photontrain_cli_test";
  fs::create_directories(dir);
  const fs::path a = dir / "a.json", b = dir / "b.json";
  CHECK(run("simulate --kind cluster --n 4 --seed 99 --out " +
            a.string()).exit_code == 0);
  CHECK(run("simulate --kind cluster --n 4 --seed 99 --out " +
            b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  // Different seeds may change the outcome branch but stay valid reports.
  const fs::path c = dir / "c.json";
  CHECK(run("simulate --kind cluster --n 4 --seed 100 --out " +
            c.string()).exit_code == 0);

  // Monte Carlo reports are deterministic too.
  const fs::path m1 = dir / "m1.json", m2 = dir / "m2.json";
  CHECK(run("budget --shots 200000 --seed 5 --out " + m1.string()).exit_code ==
        0);
  CHECK(run("budget --shots 200000 --seed 5 --out " + m2.string()).exit_code ==
        0);
  CHECK(slurp(m1) == slurp(m2));
  fs::remove_all(dir);
}

TEST_CASE("output directory override via environment") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "photontrain_env_test";
  fs::create_directories(dir);
  const std::string cmd = "PHOTONTRAIN_OUT_DIR=" + dir.string() + " " +
                          binary_path() + " budget --out envreport.json";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "envreport.json"));
  fs::remove_all(dir);
}
