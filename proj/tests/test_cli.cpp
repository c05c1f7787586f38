// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = MOTSKIT_CLI_PATH;
const std::string kTmp = MOTSKIT_TEST_TMPDIR;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_file = kTmp + "/cli_stdout.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + kCli + " " + args + " > " +
                          out_file + " 2> " + kTmp + "/cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.stdout_text = buf.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("catalog lists the five families") {
  RunResult r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  for (const char* family : {"spatial_schwarzschild", "ads_schwarzschild", "kottler",
                             "warped", "cap"})
    CHECK(r.stdout_text.find(family) != std::string::npos);
}

TEST_CASE("catalog --name surfaces the family expectations") {
  RunResult r = run_cli("catalog --name ads_schwarzschild");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("scalar_curvature = -6") != std::string::npos);
  CHECK(r.stdout_text.find("boundary_mean_curvature = 2") != std::string::npos);

  RunResult bad = run_cli("catalog --name nosuchfamily");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("catalog --format json is machine readable") {
  RunResult r = run_cli("catalog --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.stdout_text);
  CHECK(j["families"].size() == 5);
  CHECK(j["families"][0].contains("expectations"));
}

TEST_CASE("verify: config errors exit 2") {
  CHECK(run_cli("verify --metric nosuch:n=3").exit_code == 2);
  CHECK(run_cli("verify --metric kottler:n=3,m=-2").exit_code == 2);
  CHECK(run_cli("verify --metric kottler:n=3,m=0.5 --data badk").exit_code == 2);
  CHECK(run_cli("verify --metric kottler:n=3,m=0.5 --check nosuchcheck").exit_code == 2);
  CHECK(run_cli("verify").exit_code == 2);  // --metric required
  // spectrum on a sphere fiber is a misconfiguration
  CHECK(run_cli("verify --metric ads_schwarzschild:n=3,m=0.5 --check spectrum")
            .exit_code == 2);
}

TEST_CASE("verify: AdS dec passes with margin zero") {
  const std::string out = kTmp + "/ads_dec.json";
  RunResult r =
      run_cli("verify --metric ads_schwarzschild:n=3,m=0.5 --check dec --out " + out);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "pass");
  CHECK(std::abs(j["checks"][0]["value"].get<double>()) < 1e-9);
  CHECK(j["config"]["tool_version"].get<std::string>().find("motskit") == 0);
}

TEST_CASE("verify: kottler exits 3 with the outer-trapped reason") {
  const std::string out = kTmp + "/kottler.json";
  RunResult r = run_cli("verify --metric kottler:n=3,m=0.5 --data KminusEpsG --out " + out);
  CHECK(r.exit_code == 3);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "fail");
  bool found_reason = false;
  for (const auto& check : j["checks"])
    if (check["name"] == "splitting.verdict")
      found_reason = check.value("reason", "") == "interior slices outer trapped";
  CHECK(found_reason);
}

TEST_CASE("verify: cap splitting hits the cone caustic and exits 4") {
  RunResult r = run_cli("verify --metric cap:n=3,R=1 --check splitting");
  CHECK(r.exit_code == 4);
}

TEST_CASE("profile: kottler theta column is monotone negative") {
  const std::string out = kTmp + "/theta.csv";
  RunResult r = run_cli(
      "profile --metric kottler:n=3,m=0.5 --check theta --range 1.01:3 --grid 16 --out " +
      out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("theta_min") != std::string::npos);
  double prev = -1e9;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');  // r
    std::getline(ss, cell, ',');  // theta_min
    const double theta = std::stod(cell);
    CHECK(theta < 0.0);
    CHECK(theta > prev);  // increasing toward zero as r grows
    prev = theta;
    ++rows;
  }
  CHECK(rows == 16);
}

TEST_CASE("profile: xi column reproduces e^t") {
  RunResult r = run_cli("profile --check xi --metric obata:a=1,g=1 --grid 8 --range 0:3");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.stdout_text);
  std::string line;
  std::getline(ss, line);  // header
  int row = 0;
  while (std::getline(ss, line)) {
    std::stringstream cells(line);
    std::string t_text, xi_text;
    std::getline(cells, t_text, ',');
    std::getline(cells, xi_text, ',');
    CHECK(std::stod(xi_text) ==
          doctest::Approx(std::exp(std::stod(t_text))).epsilon(1e-12));
    ++row;
  }
  CHECK(row == 8);
}

TEST_CASE("profile: spectrum of -Lap starts at zero") {
  RunResult r = run_cli(
      "profile --metric warped:eps=0 --data K0 --check spectrum --grid 16");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.stdout_text);
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  std::stringstream cells(first);
  std::string idx, re;
  std::getline(cells, idx, ',');
  std::getline(cells, re, ',');
  CHECK(std::abs(std::stod(re)) < 1e-8);
}

TEST_CASE("flag validation: grid bounds and verify output format") {
  CHECK(run_cli("verify --metric warped:eps=1 --check dec --grid 4").exit_code == 2);
  CHECK(run_cli("verify --metric warped:eps=1 --check dec --grid 200").exit_code == 2);
  CHECK(run_cli("verify --metric warped:eps=1 --check dec --format csv").exit_code == 2);
  CHECK(run_cli("verify --metric warped:eps=1 --check dec --tol -1").exit_code == 2);
}

TEST_CASE("profile CSV output is byte-stable") {
  const std::string args =
      "profile --metric kottler:n=3,m=0.5 --check theta --range 1.01:3 --grid 12 --out ";
  const std::string a = kTmp + "/prof_a.csv", b = kTmp + "/prof_b.csv";
  CHECK(run_cli(args + a, "MOTSKIT_THREADS=1").exit_code == 0);
  CHECK(run_cli(args + b, "MOTSKIT_THREADS=8").exit_code == 0);
  const std::string ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
}

TEST_CASE("verify reports are byte-identical across runs and thread counts") {
  const std::string args =
      "verify --metric warped:eps=1 --data KminusEpsG --check dec --check obata "
      "--seed 11 --out ";
  const std::string a = kTmp + "/det_a.json";
  const std::string b = kTmp + "/det_b.json";
  const std::string c = kTmp + "/det_c.json";
  CHECK(run_cli(args + a, "MOTSKIT_THREADS=1").exit_code == 0);
  CHECK(run_cli(args + b, "MOTSKIT_THREADS=1").exit_code == 0);
  CHECK(run_cli(args + c, "MOTSKIT_THREADS=8").exit_code == 0);
  const std::string ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
  CHECK(ta == slurp(c));
}

TEST_CASE("reports embed config, seed, and tolerance") {
  const std::string out = kTmp + "/embed.json";
  RunResult r = run_cli(
      "verify --metric warped:eps=1 --check dec --seed 9 --tol 1e-5 --out " + out);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["tol"].get<double>() == doctest::Approx(1e-5));
  CHECK(j["config"]["metric"] == "warped:eps=1,T=2,k=2");
  CHECK(j["config"]["data"] == "KminusEpsG");
}
