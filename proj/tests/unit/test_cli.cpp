#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vieta/io.hpp"
#include "vieta/parser.hpp"
#include "vieta/system.hpp"
#include "vieta/tracker.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using vieta::Rational;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the packaged binary with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(VIETA_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path fresh_dir(const char* tag) {
  fs::path d = fs::temp_directory_path() / (std::string("vieta_cli_") + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string write_config(const fs::path& dir, const std::string& body) {
  fs::path p = dir / "run.conf";
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig =
    "F1 = x^2 - t\n"
    "F2 = y - x\n"
    "t_start = 1\n"
    "t_end = 4\n"
    "steps = 7\n";

} // namespace

TEST_CASE("format_double round-trips and is stable") {
  CHECK(vieta::format_double(0.0) == "0");
  CHECK(vieta::format_double(1.0) == "1");
  CHECK(vieta::format_double(0.5) == "0.5");
  CHECK(vieta::format_double(-2.25) == "-2.25");
  // shortest-round-trip property on awkward values
  for (double v : {1.0 / 3.0, 0.1, 3.141592653589793, -1e-17, 6.02e23}) {
    const std::string s = vieta::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("trajectory CSV has the documented shape") {
  auto sys = vieta::load_system("x^2 - t", "y - x");
  vieta::Tolerances tol;
  auto tr = vieta::track(sys, Rational(1), Rational(2), 3, tol);
  std::string csv = vieta::trajectory_csv(tr.samples);

  std::istringstream lines(csv);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header ==
        "t,particle_id,kind,re_x,im_x,re_y,im_y,re_vx,im_vx,re_vy,im_vy,"
        "re_ax,im_ax,re_ay,im_ay,near_event");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    // every row has exactly 15 commas
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
  }
  CHECK(rows == 3 * 2); // three samples, two particles
}

TEST_CASE("report JSON is an array of law entries with fixed keys") {
  auto sys = vieta::load_system("x^2 - t", "y - x");
  auto el = vieta::eliminants(sys);
  vieta::Tolerances tol;
  auto tr = vieta::track(sys, Rational(1), Rational(2), 5, tol);
  auto reports = vieta::audit(el, tr.samples, tol);
  json arr = json::parse(vieta::report_json(reports));
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == reports.size());
  for (const auto& entry : arr) {
    CHECK(entry.contains("law"));
    CHECK(entry.contains("expected"));
    CHECK(entry["expected"].contains("exact"));
    CHECK(entry["expected"].contains("approx"));
    CHECK(entry.contains("max_drift"));
    CHECK(entry.contains("verdict"));
    CHECK((entry["verdict"] == "pass" || entry["verdict"] == "fail"));
  }
}

TEST_CASE("events JSON carries exact endpoints") {
  auto sys = vieta::load_system("x^2 - t", "y - x");
  auto el = vieta::eliminants(sys);
  vieta::Tolerances tol;
  auto events = vieta::detect_events(el, Rational(-1), Rational(1), tol);
  REQUIRE(events.size() == 1);
  json arr = json::parse(vieta::events_json(events));
  REQUIRE(arr.size() == 1);
  CHECK(arr[0]["t_lo"] == "0");
  CHECK(arr[0]["t_hi"] == "0");
  CHECK(arr[0]["kind"] == "creation");
}

TEST_CASE("cli: parse reports system shape") {
  auto dir = fresh_dir("parse");
  auto cfg = write_config(dir, kSmallConfig);
  auto r = run_cli("--config " + cfg + " parse");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("n = 2, m = 1, N = 2") != std::string::npos);
  CHECK(r.out.find("structure_ok = true") != std::string::npos);
}

TEST_CASE("cli: simulate writes a deterministic trajectory") {
  auto dir = fresh_dir("sim");
  auto cfg = write_config(dir, kSmallConfig);
  auto out1 = dir / "a";
  auto out2 = dir / "b";
  auto r1 = run_cli("--config " + cfg + " --out " + out1.string() + " simulate");
  auto r2 = run_cli("--config " + cfg + " --out " + out2.string() + " simulate");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  std::string csv1 = slurp(out1 / "trajectory.csv");
  CHECK(csv1 == slurp(out2 / "trajectory.csv")); // byte-identical rerun
  CHECK(csv1.find("t,particle_id") == 0);
}

TEST_CASE("cli: audit on the packaged nine-particle system passes") {
  auto dir = fresh_dir("audit");
  fs::path cfg = fs::path(VIETA_CONFIG_DIR) / "nine_particles.conf";
  auto r = run_cli("--config " + cfg.string() + " --out " + dir.string() +
                   " --steps 17 audit");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  json arr = json::parse(slurp(dir / "nine_report.json"));
  for (const auto& entry : arr) CHECK(entry["verdict"] == "pass");
}

TEST_CASE("cli: angular subcommand emits valid JSON") {
  auto dir = fresh_dir("angular");
  auto cfg = write_config(dir, kSmallConfig);
  auto r = run_cli("--config " + cfg + " --out " + dir.string() +
                   " angular --exact");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(slurp(dir / "angular.json"));
  CHECK(j.contains("numeric"));
  REQUIRE(j.contains("exact"));
  CHECK(j["exact"]["mz"]["exact"] == "0");
  CHECK(j["exact"]["degrees"]["proper"] == 2);
  CHECK(j["exact"]["alpha"] == "1");
}

TEST_CASE("cli: config errors exit with 2") {
  auto dir = fresh_dir("cfgerr");
  // inverted range
  auto bad1 = write_config(dir, "F1 = x - t\nF2 = y - t\n"
                                "t_start = 3\nt_end = 1\nsteps = 5\n");
  auto r1 = run_cli("--config " + bad1 + " parse");
  CHECK(r1.exit_code == 2);

  // malformed polynomial (implicit multiplication)
  auto bad2 = write_config(dir, "F1 = 2x - t\nF2 = y\n"
                                "t_start = 0\nt_end = 1\nsteps = 5\n");
  auto r2 = run_cli("--config " + bad2 + " parse");
  CHECK(r2.exit_code == 2);

  // missing config file
  auto r3 = run_cli("--config " + (dir / "absent.conf").string() + " parse");
  CHECK(r3.exit_code != 0);
}

TEST_CASE("cli: degenerate leading forms exit with 3") {
  auto dir = fresh_dir("degen");
  auto cfg = write_config(dir, "F1 = x*y + 1\nF2 = 2*x*y + x\n"
                               "t_start = 0\nt_end = 1\nsteps = 5\n");
  auto r = run_cli("--config " + cfg + " --out " + dir.string() + " eliminate");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("degenerate") != std::string::npos);
}
