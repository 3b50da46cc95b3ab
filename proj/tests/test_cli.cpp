#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(file.good());
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(QLGA_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / ("qlga_cli_test_" + name);
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("spectral-flow default emits the full figure table") {
  const auto out = tmp_file("flow.csv");
  REQUIRE(run("spectral-flow --out " + out.string() + " 2>/dev/null") == 0);
  const std::string text = slurp(out);
  CHECK(count_lines(text) == 1 + 64 * 32);
  CHECK(text.substr(0, 25) == "delta,branch_index,omega\n");
  CHECK(text.back() == '\n');
}

TEST_CASE("identical invocations give byte-identical files") {
  const auto out1 = tmp_file("det1.json");
  const auto out2 = tmp_file("det2.json");
  const std::string flags =
      "detect --size 32 --seed 77 --format json --topology bounded --out ";
  REQUIRE(run(flags + out1.string()) == 0);
  REQUIRE(run(flags + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));

  const auto gc1 = tmp_file("gc1.csv");
  const auto gc2 = tmp_file("gc2.csv");
  REQUIRE(run("gauge-check --seed 5 --out " + gc1.string()) == 0);
  REQUIRE(run("gauge-check --seed 5 --out " + gc2.string()) == 0);
  CHECK(slurp(gc1) == slurp(gc2));
}

TEST_CASE("massless detect shifts by exactly A on the ring") {
  const auto out = tmp_file("det0.json");
  // k0 = 2*pi*4/16 is a lattice momentum; huge sigma = plane-wave limit
  REQUIRE(run("detect --size 16 --theta 0 --k0 pi/2 --sigma 1e9 --A 0.2 "
              "--n-samples 1 --seed 3 --format json --out " +
              out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"decision\": \"periodic\"") != std::string::npos);
  // sample_mean - baseline_mean = 0.2 exactly (to double precision)
  CHECK(text.find("\"sample_mean\": 1.7707963267948") != std::string::npos);
  CHECK(text.find("\"baseline_mean\": 1.5707963267948") != std::string::npos);

  const auto outb = tmp_file("detb.json");
  REQUIRE(run("detect --size 16 --theta 0 --k0 pi/2 --sigma 2 --A 0.2 "
              "--n-samples 25 --seed 3 --topology bounded --format json "
              "--out " +
              outb.string()) == 0);
  CHECK(slurp(outb).find("\"decision\": \"bounded\"") != std::string::npos);
}

TEST_CASE("classical exhaustive mean matches the closed form") {
  const auto out = tmp_file("classical.csv");
  REQUIRE(run("classical --size 16 --exhaustive --seed 0 --out " +
              out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(count_lines(text) == 1 + 32 + 1);  // header, 2N runs, mean row
  CHECK(text.find("mean,,,7.5,,") != std::string::npos);

  const auto ring = tmp_file("classical_ring.csv");
  REQUIRE(run("classical --size 16 --trials 5 --topology periodic --seed 1 "
              "--out " +
              ring.string()) == 0);
  const std::string ring_text = slurp(ring);
  CHECK(ring_text.find("bounded") == std::string::npos);
  CHECK(ring_text.find("32,true,periodic") != std::string::npos);
}

TEST_CASE("bounded spectral-flow exits cleanly with a notice") {
  const auto out = tmp_file("flow_bounded.csv");
  REQUIRE(run("spectral-flow --size 8 --n-delta 16 --topology bounded --out " +
              out.string() + " 2>/dev/null") == 0);
  CHECK(count_lines(slurp(out)) == 1 + 16 * 16);
}

TEST_CASE("gauge-check exit codes") {
  CHECK(run("gauge-check --seed 11 --out /dev/null") == 0);
  CHECK(run("gauge-check --seed 11 --inject-fault --out /dev/null "
            "2>/dev/null") != 0);
}

TEST_CASE("bad inputs exit nonzero") {
  CHECK(run("detect 2>/dev/null") != 0);  // missing required seed
  CHECK(run("detect --seed 1 --size 16 --sigma 40 --topology bounded "
            "2>/dev/null") != 0);  // packet margin violation
  CHECK(run("spectral-flow --topology moebius 2>/dev/null") != 0);
  CHECK(run("detect --seed 1 --no-such-flag 2>/dev/null") != 0);
}

TEST_CASE("csv and json carry the same numbers") {
  const auto csv = tmp_file("disp.csv");
  const auto js = tmp_file("disp.json");
  REQUIRE(run("dispersion --size 8 --theta pi/6 --delta 1.0 --format csv "
              "--out " + csv.string()) == 0);
  REQUIRE(run("dispersion --size 8 --theta pi/6 --delta 1.0 --format json "
              "--out " + js.string()) == 0);
  const std::string csv_text = slurp(csv);
  const std::string js_text = slurp(js);
  // spot-check one eigenphase appears in both serializations
  const auto pos = csv_text.find("\n1,");
  REQUIRE(pos != std::string::npos);
  const std::string omega =
      csv_text.substr(pos + 3, csv_text.find(',', pos + 3) - pos - 3);
  CHECK(js_text.find(omega.substr(0, 15)) != std::string::npos);
}
