#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "smdpen/config.hpp"

using namespace smdpen;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("defaults for every experiment validate") {
  for (const auto& name : experiment_names()) {
    const RunConfig c = resolve_config(name, std::nullopt, {});
    CHECK(c.experiment == name);
    CHECK(c.iterations.has_value());
    CHECK(c.seed.has_value());
    CHECK_NOTHROW(validate(c));
  }
  CHECK(resolve_config("penalty-demo-1d", std::nullopt, {}).p0 == 0.1);
  CHECK_FALSE(resolve_config("trajectories", std::nullopt, {}).p0.has_value());
}

TEST_CASE("flags override the file, which overrides defaults") {
  const auto path = write_temp("smdpen_cfg_prec.json", R"({"kappa": 2.0, "iterations": 77})");
  RunConfig flags;
  flags.kappa = 1.1;
  const RunConfig c = resolve_config("regression", path, flags);
  CHECK(c.kappa == 1.1);
  CHECK(c.iterations == 77);
  CHECK(c.gamma0 == 0.1);
}

TEST_CASE("unknown keys name the key") {
  try {
    parse_config(R"({"kapa": 1.5})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "kapa");
  }
}

TEST_CASE("range checks") {
  auto bad = [](auto mutate, const std::string& key) {
    RunConfig c = default_config("penalty-demo-1d");
    mutate(c);
    try {
      validate(c);
      FAIL("expected ConfigError for " << key);
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
    }
  };
  bad([](RunConfig& c) { c.beta = 1.0; }, "beta");
  bad([](RunConfig& c) { c.beta = 100.5; }, "beta");
  bad([](RunConfig& c) { c.kappa = 1.0; }, "kappa");
  bad([](RunConfig& c) { c.kappa = 10.01; }, "kappa");
  bad([](RunConfig& c) { c.iterations = 0; }, "iterations");
  bad([](RunConfig& c) { c.record_every = 0; }, "record_every");
  bad([](RunConfig& c) { c.gamma0 = -1.0; }, "gamma0");
  bad([](RunConfig& c) { c.sigma = -0.1; }, "sigma");
  bad([](RunConfig& c) { c.p0 = 2e12; }, "p0");
  bad([](RunConfig& c) { c.experiment = "nope"; }, "experiment");

  RunConfig edge = default_config("penalty-demo-1d");
  edge.beta = 100.0;
  edge.kappa = 10.0;
  edge.iterations = 1;
  CHECK_NOTHROW(validate(edge));
}

TEST_CASE("wrong types and malformed files are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"iterations": 1.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"beta": "two"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dual_averaging": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/smdpen.json"), ConfigError);
}

TEST_CASE("config file for another experiment is rejected") {
  const auto path = write_temp("smdpen_cfg_other.json", R"({"experiment": "rosenbrock"})");
  CHECK_THROWS_AS(resolve_config("regression", path, {}), ConfigError);
}

TEST_CASE("serialize and parse round-trip") {
  for (const auto& name : experiment_names()) {
    RunConfig c = default_config(name);
    c.gamma0 = 0.1 + 0.2;  // not exactly representable in short decimal
    c.p_max = 1e12 / 3.0;
    c.seed = 18446744073709551615ULL;
    CHECK(parse_config(serialize_config(c)) == c);
  }
  RunConfig sparse;
  sparse.experiment = "beta-vs-l1";
  sparse.sigma = 0.25;
  CHECK(parse_config(serialize_config(sparse)) == sparse);
}

TEST_CASE("shipped config files match the built-in defaults") {
  for (const auto& name : experiment_names()) {
    const std::string path = std::string(SMDPEN_SOURCE_DIR) + "/configs/" + name + ".json";
    CHECK_MESSAGE(load_config_file(path) == default_config(name), name);
  }
}
