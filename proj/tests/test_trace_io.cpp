#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "smdpen/trace_io.hpp"

using namespace smdpen;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

RunConfig small(const std::string& experiment, long iterations) {
  RunConfig c = default_config(experiment);
  c.iterations = iterations;
  return c;
}

}  // namespace

TEST_CASE("format_real round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.6}) {
    CHECK(std::stod(format_real(v)) == v);
  }
}

TEST_CASE("trace header and a zero-iteration style run") {
  RunReport r;
  TraceRow row;
  row.k = 0;
  row.x = Vector::Constant(2, 0.5);
  r.rows.push_back(row);
  const std::string csv = trace_csv(r);
  CHECK(csv.rfind("k,x1,x2,f,M,P,p,gamma,grad_norm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("demo experiment writes trace, summary and penalty curves") {
  const auto dir = fresh_dir("smdpen_io_demo");
  const auto result = run_experiment(small("penalty-demo-1d", 50));
  write_experiment(result, dir);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "timing.json"));
  const std::string curves = slurp(dir / "penalty_curves.csv");
  CHECK(curves.rfind("x,P_p=0.10000000000000001,P_p=1.6000000000000001", 0) == 0);
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 252);
  const std::string trace = slurp(dir / "trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 52);
  const std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("\"config\"") != std::string::npos);
  CHECK(summary.find("\"events\"") != std::string::npos);
  CHECK(summary.find("wall") == std::string::npos);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("multi-arm experiments get one directory per arm") {
  const auto dir = fresh_dir("smdpen_io_arms");
  write_experiment(run_experiment(small("beta-vs-l1", 20)), dir);
  CHECK(fs::exists(dir / "beta" / "trace.csv"));
  CHECK(fs::exists(dir / "l1" / "trace.csv"));
}

TEST_CASE("reruns are byte-identical") {
  const auto a = fresh_dir("smdpen_io_rerun_a");
  const auto b = fresh_dir("smdpen_io_rerun_b");
  write_experiment(run_experiment(small("trajectories", 300)), a);
  write_experiment(run_experiment(small("trajectories", 300)), b);
  for (const char* arm : {"a", "b", "c", "d"})
    CHECK(slurp(a / arm / "trace.csv") == slurp(b / arm / "trace.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("write failure leaves no partial files") {
  const auto dir = fresh_dir("smdpen_io_fail");
  fs::create_directories(dir);
  // A directory squatting on the staging name makes the first write fail.
  fs::create_directories(dir / "timing.json.tmp");
  const auto result = run_experiment(small("penalty-demo-1d", 5));
  CHECK_THROWS_AS(write_experiment(result, dir), IoError);
  CHECK_FALSE(fs::exists(dir / "summary.json"));
  CHECK_FALSE(fs::exists(dir / "summary.json.tmp"));
  CHECK_FALSE(fs::exists(dir / "trace.csv"));
}
