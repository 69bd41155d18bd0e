#include <cmath>
#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "bergman/config.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

TEST(Config, Defaults) {
  RunConfig c;
  EXPECT_EQ(c.G, 12);
  EXPECT_EQ(c.M, 2);
  EXPECT_EQ(c.grid.G_q, 10);
  EXPECT_DOUBLE_EQ(c.stopping_C, 1.05);
  EXPECT_EQ(c.b_values.size(), 9u);
  EXPECT_NO_THROW(c.validate());
  DyadicParams p = c.dyadic_params();
  EXPECT_DOUBLE_EQ(p.base, 2.0);
  EXPECT_EQ(p.max_generation, 12);
}

TEST(Config, FromJson) {
  auto j = nlohmann::json::parse(R"({
    "theta0": 0.4, "G": 8, "M": 3,
    "grid": {"G_q": 6, "angular_density": 2},
    "weights": ["power:b=0.2"], "symbols": ["one", "monomial:2"],
    "sweeps": {"b": [0.25, 0.75], "p": [3], "r_prime": [5]},
    "stopping_C": 1.02, "seed": 99,
    "outputs": {"report": "r.json", "csv": "r.csv"}, "workers": 2
  })");
  RunConfig c = RunConfig::from_json(j);
  EXPECT_DOUBLE_EQ(c.theta0, 0.4);
  EXPECT_EQ(c.G, 8);
  EXPECT_EQ(c.M, 3);
  EXPECT_EQ(c.grid.G_q, 6);
  EXPECT_EQ(c.grid.angular_density, 2);
  EXPECT_EQ(c.grid.radial_per_generation, 2);
  EXPECT_EQ(c.symbols.size(), 2u);
  EXPECT_EQ(c.b_values, (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(c.r_primes, (std::vector<double>{5.0}));
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.report_path, "r.json");
  EXPECT_EQ(c.csv_path, "r.csv");
  EXPECT_EQ(c.workers, 2);
  EXPECT_NEAR(c.dyadic_params().base, std::exp(0.8), 1e-14);
  EXPECT_EQ(RunConfig::from_json(nlohmann::json::parse(R"({"theta0": "default"})")).theta0, 0.0);
}

TEST(Config, RoundTripAndHash) {
  RunConfig c;
  c.seed = 5;
  c.b_values = {0.3};
  RunConfig d = RunConfig::from_json(c.to_json());
  EXPECT_EQ(d.to_json().dump(), c.to_json().dump());
  EXPECT_EQ(d.hash(), c.hash());
  EXPECT_EQ(c.hash().size(), 16u);
  RunConfig e = c;
  e.seed = 6;
  EXPECT_NE(e.hash(), c.hash());
  // runtime-only knobs do not enter the hash
  RunConfig f = c;
  f.workers = 4;
  f.timing = true;
  EXPECT_EQ(f.hash(), c.hash());
}

TEST(Config, Errors) {
  auto bad = [](const char* text) { return RunConfig::from_json(nlohmann::json::parse(text)); };
  EXPECT_THROW(bad("[1, 2]"), ConfigError);
  EXPECT_THROW(bad(R"({"theta0": "wide"})"), ConfigError);
  EXPECT_THROW(bad(R"({"theta0": -1})"), ConfigError);
  EXPECT_THROW(bad(R"({"G": 0})"), ConfigError);
  EXPECT_THROW(bad(R"({"n": 2})"), ConfigError);
  EXPECT_THROW(bad(R"({"G": "twelve"})"), ConfigError);
  EXPECT_THROW(bad(R"({"grid": {"G_q": 15}})"), ConfigError);
  EXPECT_THROW(bad(R"({"stopping_C": 1.0})"), ConfigError);
  EXPECT_THROW(bad(R"({"sweeps": {"b": [1.0]}})"), ConfigError);
  EXPECT_THROW(bad(R"({"sweeps": {"p": [1.0]}})"), ConfigError);
  EXPECT_THROW(bad(R"({"weights": ["nope"]})"), ConfigError);
  EXPECT_THROW(bad(R"({"symbols": ["vanishing:-1"]})"), ConfigError);
  EXPECT_THROW(bad(R"({"workers": 0})"), ConfigError);
}

TEST(Config, Load) {
  EXPECT_THROW(RunConfig::load("/nonexistent/config.json"), ConfigError);
  std::string path = ::testing::TempDir() + "bergman_config.json";
  {
    std::ofstream out(path);
    out << "{\"G\": 10, \"seed\": 7}";
  }
  RunConfig c = RunConfig::load(path);
  EXPECT_EQ(c.G, 10);
  EXPECT_EQ(c.seed, 7u);
  {
    std::ofstream out(path);
    out << "{\"G\": ";
  }
  EXPECT_THROW(RunConfig::load(path), ConfigError);
  std::remove(path.c_str());
}
